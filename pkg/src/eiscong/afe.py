"""Numeric evaluation of completed L-functions by a smoothed approximate
functional equation.

For gamma factor gamma(z) = prod_j GammaR(z + mu_j) with inverse Mellin
transform phi, the incomplete Mellin kernel

    G_s(t) = integral_t^oo phi(y) y^(s-1) dy
           = gamma(s) - sum_{j,k} R_{j,k} t^(s+mu_j+2k) / (s+mu_j+2k),
    R_{j,k} = 2 (-1)^k pi^k / k! * prod_{i != j} GammaR(mu_i - mu_j - 2k),

gives, for any split point T > 0,

    Lambda(s) = sum_n a_n n^-s G_s(nT)
              + sign * sum_n a_n n^-(w1-s) G_(w1-s)(n/T)
              + sum_{poles (s0, r)} r T^(s-s0) / (s - s0).

Integer-spaced shifts make gamma's poles collide; those configurations are
evaluated with every shift nudged by a distinct multiple of a tiny eps at
triple working precision, leaving an O(eps) error that is folded into the
reported envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mpf, workdps
from mpmath import fabs as mp_abs
from mpmath import gamma as mp_gamma
from mpmath import pi as mp_pi
from mpmath import power as mp_power

from .lfunc import Coefficient, LSpec


class PrecisionError(Exception):
    """The envelope swamps the value: under ~3 significant digits."""


class GammaPoleError(Exception):
    """Evaluation point collides with a pole of the gamma kernel."""


@dataclass(frozen=True)
class EvalResult:
    value: mpf
    error_envelope: mpf
    digits_requested: int
    coefficients_used: int

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            x = mpf(x.numerator) / x.denominator
        return mp_abs(self.value - x) <= self.error_envelope

    @property
    def interval(self) -> tuple[mpf, mpf]:
        return self.value - self.error_envelope, self.value + self.error_envelope


def coeffs_required(spec: LSpec, digits: int) -> int:
    """Heuristic Dirichlet-series cutoff for the requested accuracy."""
    d = spec.degree
    base = (digits * math.log(10) / (2 * math.pi)) ** (d / 2)
    return math.ceil(base * math.sqrt(spec.conductor) * 1.2)


def _has_collisions(shifts: Sequence[int]) -> bool:
    return any(
        (shifts[i] - shifts[j]) % 2 == 0
        for i in range(len(shifts))
        for j in range(i + 1, len(shifts))
    )


def _gamma_r(z):
    return mp_power(mp_pi, -z / 2) * mp_gamma(z / 2)


def _decay_digits(d: int, t: float) -> float:
    """Decimal digits of kernel decay exp(-d pi t^(2/d)) at argument t."""
    return d * math.pi * max(t, 0.0) ** (2.0 / d) / math.log(10)


def plan_max_arg(spec: LSpec, digits: int, N: int, t_split: float = 1.0) -> float:
    """Largest kernel argument worth evaluating.

    Beyond the point where the kernel has decayed by (digits + 40) more
    digits than the largest conceivable coefficient bound contributes, terms
    are dead; capping there keeps the cancellation guard (which grows with
    the argument) proportionate.
    """
    d = spec.degree
    tmax = 1.15 * max(N, 2) * max(t_split, 1.0 / t_split)
    w_log = 0.5 * spec.weight * math.log10(max(N, 2)) + d
    target = digits + 40 + w_log
    arg_skip = (target * math.log(10) / (d * math.pi)) ** (d / 2.0)
    return max(min(tmax, arg_skip), 8.0)


class Kernel:
    """Residue-series engine for one gamma-shift vector at one precision.

    max_arg is the largest kernel argument the precision guard covers;
    callers must not evaluate beyond it (see plan_max_arg).  Residue tables
    grow lazily during evaluation, so share a kernel across threads only
    after warming it, or give each thread its own.
    """

    def __init__(self, shifts: Sequence[int], working_digits: int, max_arg: float):
        self.shifts = tuple(shifts)
        self.d = len(shifts)
        self.working = working_digits
        self.collisions = _has_collisions(shifts)
        self.max_safe_arg = max(max_arg, 8.0)
        peak_guard = int(_decay_digits(self.d, self.max_safe_arg)) + 25
        if self.collisions:
            self.eps_exp = Fraction(-working_digits, 3)
            self.dps = 3 * working_digits + peak_guard
        else:
            self.eps_exp = None
            self.dps = working_digits + 15 + peak_guard
        with workdps(self.dps):
            eps = self.eps_bound if self.eps_exp is not None else mpf(0)
            self.mu = [mpf(m) + j * eps for j, m in enumerate(self.shifts)]
            self._r_tables: list[list] = []
            for j in range(self.d):
                r0 = mpf(2)
                for i in range(self.d):
                    if i != j:
                        r0 *= _gamma_r(self.mu[i] - self.mu[j])
                self._r_tables.append([r0])
        self._gamma_cache: dict = {}

    @property
    def eps_bound(self) -> mpf:
        if self.eps_exp is None:
            return mpf(0)
        return mpf(10) ** (mpf(self.eps_exp.numerator) / self.eps_exp.denominator)

    def _extend(self, j: int, kmax: int):
        tab = self._r_tables[j]
        mu = self.mu
        while len(tab) <= kmax:
            k = len(tab) - 1
            fac = -mp_pi / (k + 1)
            for i in range(self.d):
                if i != j:
                    fac *= 2 * mp_pi / (mu[i] - mu[j] - 2 * (k + 1))
            tab.append(tab[-1] * fac)

    def check_point(self, s: mpf):
        """Reject sigma at (or indistinguishably near) a kernel pole."""
        for m in self.shifts:
            x = float(s) + m
            if x <= 1e-9 and abs(x - round(x)) < 1e-9 and round(x) % 2 == 0:
                raise GammaPoleError(f"sigma={s} collides with a gamma-factor pole")

    def gamma_factor(self, s) -> mpf:
        key = str(s)
        got = self._gamma_cache.get(key)
        if got is not None:
            return got
        with workdps(self.dps):
            v = mpf(1)
            s = mpf(s)
            for m in self.mu:
                v *= _gamma_r(s + m)
        self._gamma_cache[key] = v
        return v

    def g_many(self, sigmas: Sequence[mpf], t) -> list[mpf]:
        """G_sigma(t) for several sigma, sharing the t-power work."""
        with workdps(self.dps):
            t = mpf(t)
            t2 = t * t
            tiny = mpf(10) ** (-(self.dps - 3))
            out = [self.gamma_factor(s) for s in sigmas]
            sig_pows = [mp_power(t, s) for s in sigmas]
            kmin = int(3.2 * float(t) ** (2.0 / self.d)) + 4
            for j in range(self.d):
                mu_j = self.mu[j]
                tab = self._r_tables[j]
                tp = mp_power(t, mu_j)
                accs = [mpf(0)] * len(sigmas)
                maxu = mpf(0)
                k = 0
                while True:
                    self._extend(j, k)
                    u = tab[k] * tp
                    au = mp_abs(u)
                    if au > maxu:
                        maxu = au
                    two_k = 2 * k
                    for idx, s in enumerate(sigmas):
                        accs[idx] += u / (s + mu_j + two_k)
                    if k > kmin and au < maxu * tiny:
                        break
                    if k > 200_000:
                        raise RuntimeError("kernel series failed to converge")
                    tp *= t2
                    k += 1
                for idx in range(len(sigmas)):
                    out[idx] -= accs[idx] * sig_pows[idx]
            return out

    def g(self, sigma, t) -> mpf:
        with workdps(self.dps):
            return self.g_many([mpf(sigma)], t)[0]


def _polar_sum(spec: LSpec, s: mpf, T: mpf) -> mpf:
    total = mpf(0)
    for s0, r in spec.polar:
        total += r * mp_power(T, s - s0) / (s - s0)
    return total


@dataclass
class _SumResult:
    lam: mpf
    env: mpf
    used: int


def _lambda_sum_points(
    spec: LSpec,
    kernel: Kernel,
    coeffs: list[Coefficient],
    points: Sequence[mpf],
    floor_rel: mpf,
) -> list[_SumResult]:
    """Smoothed sums for Lambda at several points, split point 1.

    One pass over n serves every point: the kernel values G_sigma(n) for the
    union of all required sigma are produced together.
    """
    w1 = spec.w1
    sign = spec.sign
    N = len(coeffs) - 1
    cap = kernel.max_safe_arg
    with workdps(kernel.dps):
        pts = [mpf(str(s)) for s in points]
        sigmas: list[mpf] = []
        index: dict[str, int] = {}
        pairs = []
        for s in pts:
            ab = []
            for sig in (s, w1 - s):
                kernel.check_point(sig)
                key = str(sig)
                if key not in index:
                    index[key] = len(sigmas)
                    sigmas.append(sig)
                ab.append(index[key])
            pairs.append(tuple(ab))
        lam = [mpf(0)] * len(pts)
        env = [mpf(0)] * len(pts)
        used = [0] * len(pts)
        floors: list[Optional[mpf]] = [None] * len(pts)
        quiet = [0] * len(pts)
        done = [False] * len(pts)
        done_at = [0] * len(pts)
        last_terms = [mpf(0)] * len(pts)
        n = 0
        for n in range(1, N + 1):
            if n > cap:
                n -= 1
                break
            gv = kernel.g_many(sigmas, n)
            inv_pows = [mp_power(n, -sig) for sig in sigmas]
            c = coeffs[n]
            if c.available:
                a = mpf(c.value.numerator) / c.value.denominator
            bb = mpf(c.bound.numerator) / c.bound.denominator
            for i, (i1, i2) in enumerate(pairs):
                if done[i]:
                    continue
                k_main = inv_pows[i1] * gv[i1]
                k_refl = inv_pows[i2] * gv[i2]
                term_bound = bb * (mp_abs(k_main) + mp_abs(k_refl))
                last_terms[i] = term_bound
                if c.available:
                    lam[i] += a * (k_main + sign * k_refl)
                    used[i] += 1
                else:
                    env[i] += term_bound
                if floors[i] is None:
                    floors[i] = (term_bound + mp_abs(lam[i]) + env[i]) * floor_rel
                if n > 4 and term_bound < floors[i]:
                    quiet[i] += 1
                    if quiet[i] >= 3:
                        done[i] = True
                        done_at[i] = n
                else:
                    quiet[i] = 0
            if all(done):
                break
        # indices a point skipped between its own stop and the global stop
        # were each below its floor; charge them to the envelope wholesale
        for i in range(len(pts)):
            if done[i] and floors[i] is not None and n > done_at[i]:
                env[i] += floors[i] * (n - done_at[i])
        # close out every point with sampled tail terms + geometric remainder
        tails = [mpf(0)] * len(pts)
        ratios = [mpf("0.9")] * len(pts)
        terms = list(last_terms)
        prev: list[Optional[mpf]] = [None] * len(pts)
        open_pts = [i for i in range(len(pts))]
        for m in range(n + 1, n + 31):
            if m > cap or not open_pts:
                break
            gv = kernel.g_many(sigmas, m)
            inv_pows = [mp_power(m, -sig) for sig in sigmas]
            b = spec.coefficient_bound(m)
            bb = mpf(b.numerator) / b.denominator
            still = []
            for i in open_pts:
                i1, i2 = pairs[i]
                term = bb * (mp_abs(inv_pows[i1] * gv[i1]) + mp_abs(inv_pows[i2] * gv[i2]))
                tails[i] += term
                if prev[i] is not None and prev[i] > 0:
                    ratios[i] = max(ratios[i], term / prev[i])
                terms[i] = term
                if floors[i] is not None and term < floors[i] * mpf("1e-2"):
                    continue
                prev[i] = term
                still.append(i)
            open_pts = still
        out = []
        for i, s in enumerate(pts):
            r = min(ratios[i], mpf("0.985"))
            total_env = env[i] + tails[i] + terms[i] * r / (1 - r)
            total = lam[i] + _polar_sum(spec, s, mpf(1))
            out.append(_SumResult(lam=total, env=total_env, used=used[i]))
        return out


def _lambda_sum(
    spec: LSpec,
    kernel: Kernel,
    coeffs: list[Coefficient],
    s: mpf,
    T: mpf,
    floor_rel: mpf,
    swap_sides: bool = False,
) -> _SumResult:
    """One smoothed sum for Lambda(s) with split point T.

    swap_sides computes sign * Lambda_T(w1 - s): identical to the direct
    representation exactly when the functional-equation data is right.
    """
    w1 = spec.w1
    sign = spec.sign
    N = len(coeffs) - 1
    s_eval = w1 - s if swap_sides else s
    sig1, sig2 = mpf(s_eval), mpf(w1 - s_eval)
    kernel.check_point(sig1)
    kernel.check_point(sig2)
    cap = kernel.max_safe_arg
    with workdps(kernel.dps):
        lam = mpf(0)
        env = mpf(0)
        floor = None
        quiet = 0
        used = 0
        n = 0
        last_term = mpf(0)
        for n in range(1, N + 1):
            if n * float(T) > cap:
                # beyond the planned argument range every term sits far
                # below the floor by construction; close out via the tail
                n -= 1
                break
            g1, _g2 = kernel.g_many([sig1, sig2], n * T)
            _h1, h2 = kernel.g_many([sig1, sig2], mpf(n) / T)
            k_main = mp_power(n, -sig1) * g1
            k_refl = mp_power(n, -sig2) * h2
            c = coeffs[n]
            term_bound = mpf(c.bound.numerator) / c.bound.denominator * (
                mp_abs(k_main) + mp_abs(k_refl)
            )
            last_term = term_bound
            if c.available:
                a = mpf(c.value.numerator) / c.value.denominator
                lam += a * (k_main + sign * k_refl)
                used += 1
            else:
                env += term_bound
            if floor is None:
                floor = (term_bound + mp_abs(lam) + env) * floor_rel
            if n > 4 and term_bound < floor:
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
        # remaining-terms bound: sample past the stopping point with the
        # generic tempered bound, then close with a guarded geometric sum
        tail = mpf(0)
        prev = None
        worst_ratio = mpf("0.9")
        term = last_term
        m = n
        for m in range(n + 1, n + 31):
            if m * float(T) > cap:
                break
            g1 = kernel.g_many([sig1], m * T)[0]
            h2 = kernel.g_many([sig2], mpf(m) / T)[0]
            b = spec.coefficient_bound(m)
            bb = mpf(b.numerator) / b.denominator
            term = bb * (mp_abs(mp_power(m, -sig1) * g1) + mp_abs(mp_power(m, -sig2) * h2))
            tail += term
            if prev is not None and prev > 0:
                worst_ratio = max(worst_ratio, term / prev)
            if floor is not None and term < floor * mpf("1e-2"):
                break
            prev = term
        r = min(worst_ratio, mpf("0.985"))
        tail += term * r / (1 - r)
        env += tail
        lam += _polar_sum(spec, sig1, T)
        if swap_sides:
            lam *= sign
        return _SumResult(lam=lam, env=env, used=used)


def _default_working(spec: LSpec, digits: int) -> int:
    if _has_collisions(spec.gamma_shifts):
        return max(38, 3 * (digits + 3))
    return max(38, digits + 10)


def evaluate(
    spec: LSpec,
    s,
    digits: int = 30,
    N: Optional[int] = None,
    coeffs: Optional[list[Coefficient]] = None,
    working_digits: Optional[int] = None,
    _kernel: Optional[Kernel] = None,
) -> EvalResult:
    """L(s) via the smoothed series, with an error envelope.

    The envelope covers Dirichlet-series truncation, every unavailable
    coefficient (through the spec's bounds) and the pole-separation nudge.
    The value is returned even when the envelope exceeds the requested
    precision; only a sub-3-significant-digit result raises PrecisionError.
    """
    if N is None:
        N = max(coeffs_required(spec, digits + 5), 12)
    if coeffs is None:
        coeffs = spec.coefficients(N)
    P = working_digits or _default_working(spec, digits)
    kernel = _kernel or Kernel(
        spec.gamma_shifts, P, max_arg=plan_max_arg(spec, digits, len(coeffs) - 1)
    )
    return _finish(
        spec, kernel, _lambda_sum_points(spec, kernel, coeffs, [s], mpf(10) ** (-(digits + 4)))[0],
        s, digits, P,
    )


def _finish(spec: LSpec, kernel: Kernel, res: _SumResult, s, digits: int, P: int) -> EvalResult:
    with workdps(kernel.dps):
        gam = kernel.gamma_factor(mpf(str(s)))
        value = res.lam / gam
        slop = (mp_abs(res.lam) / mp_abs(gam) + 1) * (
            kernel.eps_bound * 1000 * kernel.d + mpf(10) ** (-(P + 5))
        )
        envelope = res.env / mp_abs(gam) + slop
    if mp_abs(value) > 0 and envelope > mp_abs(value):
        raise PrecisionError(
            f"envelope {envelope} swamps the value {value}: "
            "no significant digits are available"
        )
    return EvalResult(
        value=value,
        error_envelope=envelope,
        digits_requested=digits,
        coefficients_used=res.used,
    )


def evaluate_many(
    spec: LSpec,
    points: Sequence,
    digits: int = 30,
    N: Optional[int] = None,
    working_digits: Optional[int] = None,
) -> list[EvalResult]:
    """Evaluate L at several points, sharing coefficients and kernel tables."""
    if N is None:
        N = max(coeffs_required(spec, digits + 5), 12)
    coeffs = spec.coefficients(N)
    P = working_digits or _default_working(spec, digits)
    kernel = Kernel(
        spec.gamma_shifts, P, max_arg=plan_max_arg(spec, digits, len(coeffs) - 1)
    )
    results = _lambda_sum_points(
        spec, kernel, coeffs, list(points), mpf(10) ** (-(digits + 4))
    )
    return [
        _finish(spec, kernel, res, s, digits, P) for s, res in zip(points, results)
    ]


def ratio(
    spec: LSpec,
    t1,
    t2,
    digits: int = 30,
    N: Optional[int] = None,
    coeffs: Optional[list[Coefficient]] = None,
) -> EvalResult:
    """L(t1) / (pi^((d/2)(t1-t2)) L(t2)) with a combined envelope.

    For the degree-4 spinor span-2 ratios this is L(t1)/(pi^4 L(t2)); for
    the degree-8 triple product, L(l1)/(pi^(4(l1-l2)) L(l2)).
    """
    if N is None:
        N = max(coeffs_required(spec, digits + 5), 12)
    if coeffs is None:
        coeffs = spec.coefficients(N)
    P = _default_working(spec, digits)
    kernel = Kernel(
        spec.gamma_shifts, P, max_arg=plan_max_arg(spec, digits, len(coeffs) - 1)
    )
    sums = _lambda_sum_points(spec, kernel, coeffs, [t1, t2], mpf(10) ** (-(digits + 4)))
    num = _finish(spec, kernel, sums[0], t1, digits, P)
    den = _finish(spec, kernel, sums[1], t2, digits, P)
    exp = (spec.degree // 2) * (int(t1) - int(t2))
    with workdps(kernel.dps):
        pip = mp_power(mp_pi, exp)
        if mp_abs(den.value) <= den.error_envelope:
            raise ZeroDivisionError("denominator indistinguishable from zero")
        val = num.value / (pip * den.value)
        env = (num.error_envelope + mp_abs(val) * pip * den.error_envelope) / (
            pip * (mp_abs(den.value) - den.error_envelope)
        )
    return EvalResult(
        value=val,
        error_envelope=env,
        digits_requested=digits,
        coefficients_used=max(num.coefficients_used, den.coefficients_used),
    )


def fe_residual(
    spec: LSpec,
    probes: Sequence,
    digits: int = 25,
    N: Optional[int] = None,
    T: str = "1.04",
    working_digits: Optional[int] = None,
) -> mpf:
    """Self-test of the assumed functional equation.

    For each probe s the completed function is computed twice with split
    point T != 1: reflected at s, and reflected at w1 - s.  The two series
    agree (up to truncation) exactly when the functional-equation data is
    right, and differ by an integral of the theta-relation defect otherwise,
    e.g. under a deliberately flipped sign.  Returns the worst relative
    discrepancy over the probes.
    """
    if N is None:
        N = min(max(coeffs_required(spec, digits + 8), 16), 2000)
    coeffs = spec.coefficients(N)
    for c in coeffs[1:]:
        if not c.available:
            raise ValueError("functional-equation test needs full coefficients")
    P = working_digits or _default_working(spec, digits)
    kernel = Kernel(
        spec.gamma_shifts, P, max_arg=plan_max_arg(spec, digits, N, t_split=float(mpf(T)))
    )
    worst = mpf(0)
    with workdps(kernel.dps):
        T = mpf(T)
        floor_rel = mpf(10) ** (-(digits + 8))
        for probe in probes:
            s = mpf(str(probe))
            a = _lambda_sum(spec, kernel, coeffs, s, T, floor_rel, swap_sides=False)
            b = _lambda_sum(spec, kernel, coeffs, s, T, floor_rel, swap_sides=True)
            denom = max(mp_abs(a.lam), mp_abs(b.lam))
            if denom == 0:
                raise ZeroDivisionError("probe at a zero of the completed function")
            worst = max(worst, mp_abs(a.lam - b.lam) / denom)
    return worst
