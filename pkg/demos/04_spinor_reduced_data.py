"""Degree-4 spinor ratios from reduced data, with honest envelopes.

Only prime-indexed eigenvalues at p <= 13 are bundled; prime-square data is
not published.  The evaluator treats the unknown coefficients as bounded
intervals (temperedness), so the result is an interval guaranteed to contain
the true value.  The published rational sits comfortably inside.
"""

from fractions import Fraction

from mpmath import mpf, nstr

from eiscong import afe, dataset, lfunc
from eiscong.exact import rational_reconstruct

ds = dataset.bundled()
lambdas = ds.lambda_source("D25_17")
print("bundled prime eigenvalues for the (j,k)=(16,6) form:", lambdas["p"])
print("bundled prime-square eigenvalues:", lambdas["p2"] or "none")

spec = lfunc.spinor_spec(16, 6, lambdas)
r = afe.ratio(spec, 19, 17, digits=12, N=40)
target = Fraction(1880, 187119)
lo, hi = r.interval
print()
print(f"L(19)/(pi^4 L(17)) in [{nstr(lo, 10)}, {nstr(hi, 10)}]")
print(f"published value {target} = {float(target):.12f}")
print(f"interval contains it: {r.contains(target)}")
print(f"relative width: {nstr(2 * r.error_envelope / abs(r.value), 3)}")

print()
print("with full data one rationalizes the 30-digit evaluation instead:")
dec = "0.0100470823379774368182814145009"
print(f"  {dec} -> {rational_reconstruct(dec, 10**10)}")
