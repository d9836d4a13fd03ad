"""Small finite DGA zoo with randomized basis scrambling.

Shared by the differential/product stress tests: a pool of hand-built
algebras of dimension <= 4 (some with nonzero differential), optionally
conjugated by a random degree-preserving invertible map so structure
constants stop looking special.
"""

from strop.algebra import (
    FiniteGradedAlgebra,
    change_basis,
    dual_numbers,
    exterior_algebra,
    square_zero_extension,
    tensor_product,
    truncated_polynomial,
)


def acyclic_extension(ring, n=1):
    """k plus a two-step acyclic piece x -> y in degrees n, n+1; xy = 0."""
    one = ring.one()
    return FiniteGradedAlgebra(
        ring,
        names=("1", "x", "y"),
        degrees=(0, n, n + 1),
        unit={0: one},
        mul={(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one},
             (0, 2): {2: one}, (2, 0): {2: one}},
        diff={1: {2: one}},
    )


def base_pool(ring):
    """Hand-built algebras of dimension <= 4 over the given field."""
    return [
        dual_numbers(ring),
        truncated_polynomial(ring, var_degree=0, truncation=4),
        truncated_polynomial(ring, var_degree=2, truncation=2),
        exterior_algebra(ring, [1]),
        exterior_algebra(ring, [3]),
        exterior_algebra(ring, [1, 2]),
        square_zero_extension(ring, 3),
        acyclic_extension(ring, 1),
        acyclic_extension(ring, 2),
        tensor_product(dual_numbers(ring), exterior_algebra(ring, [3])),
        tensor_product(exterior_algebra(ring, [1]), dual_numbers(ring)),
    ]


def random_scramble(rng, algebra, ops=6):
    """Conjugate by a random degree-preserving invertible basis change."""
    ring = algebra.ring
    by_degree = {}
    for i, d in enumerate(algebra.degrees):
        by_degree.setdefault(d, []).append(i)
    forward = [{i: ring.one()} for i in range(algebra.dim)]
    blocks = [ix for ix in by_degree.values() if len(ix) > 1]
    if blocks:
        for _ in range(ops):
            block = rng.choice(blocks)
            i, j = rng.sample(block, 2)
            c = ring.from_int(rng.randint(1, 3))
            for k, v in forward[j].items():
                cur = ring.add(forward[i].get(k, ring.zero()), ring.mul(c, v))
                if ring.is_zero(cur):
                    forward[i].pop(k, None)
                else:
                    forward[i][k] = cur
    return change_basis(algebra, forward)


def random_dga(rng, ring, scramble=True):
    a = rng.choice(base_pool(ring))
    if scramble:
        a = random_scramble(rng, a)
    return a
