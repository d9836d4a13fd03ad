"""Sign convention for the Hochschild differential and cup product.

Every Koszul sign used by the Hochschild machinery lives in this module, in
one normal form, so there is exactly one place to audit. The convention is
validated operationally: d*d = 0 is enforced on every assembled window, the
cup product must be strictly associative and unital, the Leibniz rule must
hold, and the degree-0 differential must vanish on graded-commutative
algebras with zero differential. Flipping any helper below breaks one of
those checks.

Setup. For a homogeneous element a write ||a|| = deg(a) - 1 (the degree in
the shift A[1]). An elementary cochain f = (r_1, ..., r_s -> b) has total
degree n = s + deg(b) - sum(deg(r_j)), equivalently

    |f| = ||b|| - sum_j ||r_j|| = n - 1.

Below, g always denotes this shifted total degree n - 1 of the cochain the
differential acts on, and "prefix i" means sum_{j < i} ||r_j||.

The differential of f is the sum of:

  internal, output:    for c * b' in d(b):
                       (r_1..r_s -> b')            coefficient  -c
  internal, slot i:    for r_i appearing in d(a) with coefficient c:
                       (r_1.. a ..r_s -> b)        coefficient  +(-1)^(g + prefix i) * c
  bar, left:           for c * w in a * b, a an allowed input:
                       (a, r_1..r_s -> w)          coefficient  (-1)^((g+1)*||a||) * c
  bar, right:          for c * w in b * a:
                       (r_1..r_s, a -> w)          coefficient  (-1)^(||b||) * c
  bar, middle slot i:  for r_i appearing in a*a' with coefficient c
                       (unit component projected away in normalized mode):
                       (r_1.., a, a', ..r_s -> b)  coefficient  -(-1)^(g + prefix i + ||a||) * c

The cup product of f with a second cochain psi of total degree n_psi
contributes, for c * w in b_f * b_psi,

    (inputs_f ++ inputs_psi -> w)   coefficient  (-1)^(n_psi * sum_j ||r_{f,j}||) * c.

All helpers return +1 or -1 as plain ints. They are looked up through the
module at call time, which keeps them patchable for fault-injection tests.
"""


def shifted(degree):
    """Degree in the shifted copy A[1]."""
    return degree - 1


def internal_output_sign():
    return -1


def internal_slot_sign(g, prefix):
    return -1 if (g + prefix) % 2 else 1


def bar_left_sign(g, input_norm):
    return -1 if ((g + 1) * input_norm) % 2 else 1


def bar_right_sign(output_norm):
    return -1 if output_norm % 2 else 1


def bar_middle_sign(g, prefix, first_norm):
    return 1 if (g + prefix + first_norm) % 2 else -1


def cup_sign(right_degree, left_input_norms):
    return -1 if (right_degree * left_input_norms) % 2 else 1
