"""Resolving eigenvalue pairs on two-dimensional stable spaces.

Where the stable part of the trace space is two-dimensional, single traces
do not determine eigenvalues.  The quadratic relation in the local Hecke
algebra turns tr T(p), tr T(p^2) and tr T(p,p) into tr T(p)^2, and solving
x^2 - (a+b)x + ab = 0 produces a conjugate pair in a real quadratic field.
The congruence then lives at the level of norms.
"""

from eiscong import congruence, dataset

ds = dataset.bundled()
for name in ("so43q_25_17_3_mod59", "so43q_25_17_7_mod1223", "so43q_25_19_5_mod103"):
    rep = congruence.check_quadratic(congruence.load_cases()[name], ds)
    print(f"== {name} (mod {rep.case.modulus})")
    for label, value in rep.chain:
        print(f"   {label}: {value}")
    print(f"   norm factorization: {rep.norm_factorization.marked(rep.case.modulus)}")
    print(f"   modulus divides norm: {rep.divisible}")
    print()
