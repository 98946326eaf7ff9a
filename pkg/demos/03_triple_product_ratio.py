"""Triple-product critical values: numerics against the exact identity.

Every coefficient of the degree-8 Dirichlet series is computable from the
three eigenforms, so these are full-precision evaluations.  The ratio of
consecutive critical values has an exact rational prediction from the
normalized-value tables and an elementary gamma-factor quotient; we compute
the same ratio analytically and watch the digits agree.
"""

import time
from fractions import Fraction

from mpmath import mp, mpf, nstr, pi

from eiscong import afe, lfunc
from eiscong.exact import factorize

k1, k2, k3 = 20, 16, 12
spec = lfunc.triple_spec(k1, k2, k3)
print(f"weights ({k1},{k2},{k3}): degree {spec.degree}, "
      f"functional equation s <-> {spec.w1} - s, sign {spec.sign}")

t0 = time.time()
r = afe.ratio(spec, 26, 24, digits=14, N=460)
target = Fraction(2**4 * 19, 3**3 * 5**3 * 7**2 * 13)
print(f"L(26)/(pi^8 L(24)) numeric : {nstr(r.value, 16)}")
print(f"exact prediction           : {target} "
      f"= {factorize(target.numerator)} / ({factorize(target.denominator)})")
print(f"envelope {nstr(r.error_envelope, 3)}, "
      f"{r.coefficients_used} coefficients, {time.time() - t0:.1f}s")

print()
print("functional-equation self-test (split-point cross check):")
t0 = time.time()
res = afe.fe_residual(spec, [25], digits=18, N=420, T="1.05", working_digits=60)
print(f"residual {nstr(res, 3)} ({time.time() - t0:.1f}s)")
flipped = lfunc.LSpec(
    kind=spec.kind, gamma_shifts=spec.gamma_shifts, w1=spec.w1, sign=-spec.sign,
    conductor=spec.conductor, weight=spec.weight, coeff_source=spec.coeff_source,
)
res_bad = afe.fe_residual(flipped, [25], digits=18, N=420, T="1.05", working_digits=60)
print(f"residual with the sign deliberately flipped: {nstr(res_bad, 3)}")
