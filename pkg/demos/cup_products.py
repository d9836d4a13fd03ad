"""Cohomology rings with cup products, at simplex level and on classes.

The projective plane over F2 is the test that order matters: the
generator of H^1 squares to the generator of H^2, which no amount of
chain-level luck produces if the front/back face split is wrong.
"""

from strop.rings import GF2, RATIONALS
from strop.simplicial import Cochain, bundled_complex, cohomology_ring, \
    coboundary, cup_product

rp2 = bundled_complex("rp2")
ring = cohomology_ring(rp2, GF2)
print("H^*(rp2; F2) basis:", ring.names)

a = ring.index_of("h1_0")
square = ring.multiply_basis(a, a)
print("h1_0 * h1_0 =", {ring.names[i]: GF2.scalar_to_str(c)
                        for i, c in square.items()})

# the same square at cochain level: pick any representative cocycle of
# degree 1 and cup it with itself; the result is a cocycle but only its
# class is canonical
s2 = bundled_complex("sphere2")
r2 = cohomology_ring(s2, RATIONALS)
print("\nH^*(sphere2; Q) basis:", r2.names)
top = r2.index_of("h2_0")
print("h2_0 * h2_0 =", r2.multiply_basis(top, top) or {})

# raw cochain-level cup product on the 2-sphere: a vertex indicator cups
# against an edge indicator only along simplices where they concatenate
phi = Cochain(s2, RATIONALS, 0, {(0,): RATIONALS.one()})
psi = Cochain(s2, RATIONALS, 1, {(0, 1): RATIONALS.one()})
print("\nindicator(0) cup indicator(01) =", dict(cup_product(phi, psi).values_))
print("coboundary of indicator(0)      =", dict(coboundary(phi).values_))
