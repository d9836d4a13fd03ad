"""Betti numbers and integral torsion for the bundled complexes."""

from strop.rings import GF2, INTEGERS, RATIONALS
from strop.simplicial import BUNDLED_COMPLEXES, betti_numbers, \
    bundled_complex, homology_summary

for name in BUNDLED_COMPLEXES:
    x = bundled_complex(name)
    print("%-8s dim %d, %s" % (name, x.dimension,
                               ", ".join("%d cells in dim %d" % (len(x.simplices[m]), m)
                                         for m in sorted(x.simplices))))
    print("  betti/Q  %s" % (betti_numbers(x, RATIONALS),))
    print("  betti/F2 %s" % (betti_numbers(x, GF2),))
    torsion = {m: s.torsion for m, s in homology_summary(x, INTEGERS).items()
               if s.torsion}
    if torsion:
        print("  torsion  %s" % torsion)
print()

# the projective plane is the interesting row: H_1 = Z/2 shows up as
# torsion over Z and as an extra betti number mod 2
rp2 = bundled_complex("rp2")
print("rp2 homology over Z:")
for m, s in sorted(homology_summary(rp2, INTEGERS).items()):
    print("  H_%d: free rank %d, torsion %s" % (m, s.free_rank,
                                                list(s.torsion) or "none"))
