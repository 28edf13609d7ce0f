"""Correlation kernel of the measure: symbol coefficients, certified entries,
determinantal correlations, gap probabilities, and structural identities.

The symbol is
    J(z) = prod_i (1 - t x_i z)/(1 - x_i z) * prod_j (1 - y_j / z),
with Laurent coefficients J_n and inverse coefficients Jhat_m.  A kernel entry
on the half-integer lattice (integer d stands for the point d + 1/2) is

    K(d_i, d_j) = sum_{c >= 0} J_{d_i + c + 1} * Jhat_{-d_j - c - 1},

and correlation probabilities are minors of K.  Every truncation made here
(the inverse-coefficient sums and the c-sum above) carries a certified bound
derived from geometric majorants: |J_n| <= M(rho) rho^{-n} for any radius rho
in the annulus of analyticity, where M multiplies the absolute-value factors
of the product form.  Bounds are minimized over a radius grid; any grid point
yields a valid bound, so the minimization only sharpens, never weakens.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .partitions import contains_points, partitions
from .series import TruncatedSeries


def _geom_grid(lo, hi, n=12):
    """Geometric grid strictly inside (lo, hi)."""
    lo, hi = float(lo), float(hi)
    if not (hi > lo > 0):
        return []
    return [lo * (hi / lo) ** (k / (n + 1)) for k in range(1, n + 1)]


def _exp_clamped(log_value):
    """exp() that saturates instead of overflowing; bounds stay valid."""
    if log_value > 700.0:
        return math.inf
    if log_value < -700.0:
        return 0.0
    return math.exp(log_value)


class ProductSymbol:
    """Exact-rational symbol windows for finite variable lists.

    J_n is exact on the computed window (the z^{-1}-part of J is a finite
    polynomial, so no truncation enters).  Jhat_m is a truncated sum with a
    certified per-coefficient error bound `eps_hat(m)`.
    """

    def __init__(self, xs, ys, t, dlo, dhi, kcap=None, tol=1e-12, cap_c=None):
        self.xs = tuple(Fraction(x) for x in xs)
        self.ys = tuple(Fraction(y) for y in ys)
        self.t = Fraction(t)
        xmax = max(self.xs, default=Fraction(0))
        ymax = max(self.ys, default=Fraction(0))
        tmag = abs(self.t)
        self.r_in = float(ymax)
        self.r_out_j = float(1 / xmax) if xmax else math.inf
        self.r_out_jhat = float(1 / (tmag * xmax)) if (xmax and tmag) else math.inf
        if min(self.r_out_j, self.r_out_jhat) <= self.r_in:
            raise ValueError("empty annulus: max y too close to 1/max x")

        self.dlo, self.dhi = dlo, dhi
        if kcap is None:
            kcap = self._auto_kcap(dlo, tol)
        self.kcap = kcap
        self._eps_cache = {}
        self._build(cap_c=cap_c, tol=tol)

    # -- majorants -----------------------------------------------------------

    def majorant_j(self, rho):
        """M with |J_n| <= M(rho) rho^{-n}; valid for 0 < rho < r_out_j."""
        m = 1.0
        for x in self.xs:
            m *= (1 + abs(float(self.t)) * float(x) * rho) / (1 - float(x) * rho)
        for y in self.ys:
            m *= 1 + float(y) / rho
        return m

    def majorant_jhat(self, rho):
        """M with |Jhat_m| <= M(rho) rho^{-m}; valid for r_in < rho < r_out_jhat."""
        m = 1.0
        for x in self.xs:
            m *= (1 + float(x) * rho) / (1 - abs(float(self.t)) * float(x) * rho)
        for y in self.ys:
            m *= 1 / (1 - float(y) / rho)
        return m

    def _radius_pairs(self):
        hi1 = min(self.r_out_j, 1e6)
        lo = self.r_in if self.r_in else 1e-6
        for r1 in _geom_grid(lo, hi1):
            for r2 in _geom_grid(lo, min(r1, self.r_out_jhat)):
                if r2 < r1:
                    yield r1, r2

    def _auto_kcap(self, dlo, tol):
        """Smallest c-sum length whose geometric tail certificate meets tol."""
        best = None
        for r1, r2 in self._radius_pairs():
            log_amp = (
                math.log(self.majorant_j(r1))
                + math.log(self.majorant_jhat(r2))
                - (dlo + 1) * math.log(r1)
                + (dlo + 1) * math.log(r2)
            )
            ratio = r2 / r1
            log_target = math.log(tol) + math.log(1 - ratio) - log_amp
            k = max(8, int(math.ceil(log_target / math.log(ratio))))
            if best is None or k < best:
                best = k
        if best is None:
            raise ValueError("could not certify a c-sum truncation")
        return min(best + 8, 4000)

    # -- window construction ---------------------------------------------------

    def _build(self, cap_c, tol):
        t = self.t
        n_y = len(self.ys)
        j_hi = self.dhi + self.kcap + 1
        # positive-power series prod (1 - t x z)/(1 - x z) up to j_hi + n_y
        cap_a = max(j_hi + n_y, 0)
        a = TruncatedSeries.one(cap_a)
        for x in self.xs:
            geom = [Fraction(1)]
            for _ in range(cap_a):
                geom.append(geom[-1] * x)
            a = a * TruncatedSeries(geom, cap_a)
            a = a * TruncatedSeries([1, -t * x], cap_a)
        # lowering polynomial prod (1 - y/z): q_c = (-1)^c e_c(y)
        q = [Fraction(1)]
        for y in self.ys:
            q = [c1 - y * c2 for c1, c2 in zip(q + [Fraction(0)], [Fraction(0)] + q)]
        self._q = q

        self._j = {}
        for n in range(-n_y, j_hi + 1):
            s = Fraction(0)
            for c, qc in enumerate(q):
                if 0 <= n + c <= cap_a:
                    s += qc * a[n + c]
            self._j[n] = s

        # inverse: B(z) = prod (1 - x z)/(1 - t x z) times prod 1/(1 - y/z)
        m_lo = -(self.dhi + self.kcap + 1)
        m_hi = max(-(self.dlo + 1), 0)
        if cap_c is None:
            cap_c = self._auto_cap_c(m_lo, m_hi, tol)
        self._cap_c = cap_c
        cap_b = m_hi + cap_c
        b = TruncatedSeries.one(cap_b)
        for x in self.xs:
            geom = [Fraction(1)]
            for _ in range(cap_b):
                geom.append(geom[-1] * (t * x))
            b = b * TruncatedSeries(geom, cap_b)
            b = b * TruncatedSeries([1, -x], cap_b)
        # h_c(y): coefficients of prod_j 1/(1 - y_j w), all nonnegative
        g = TruncatedSeries.one(cap_c)
        for y in self.ys:
            geom = [Fraction(1)]
            for _ in range(cap_c):
                geom.append(geom[-1] * y)
            g = g * TruncatedSeries(geom, cap_c)

        self._jhat = {}
        for m in range(m_lo, m_hi + 1):
            s = Fraction(0)
            for c in range(cap_c + 1):
                bidx = m + c
                if 0 <= bidx <= cap_b:
                    s += g[c] * b[bidx]
            self._jhat[m] = s

    def _auto_cap_c(self, m_lo, m_hi, tol):
        for cap in (64, 128, 256, 512, 1024):
            if max(self._eps_hat_for(m_lo, cap), self._eps_hat_for(m_hi, cap)) < tol:
                return cap
        return 2048

    def _eps_hat_for(self, m, cap_c):
        """Certified bound on the dropped c-tail of the sum for Jhat_m."""
        if not self.ys:
            return 0.0
        best = math.inf
        w_hi = 1 / self.r_in
        for w0 in _geom_grid(1.0, w_hi):
            gmaj = 1.0
            for y in self.ys:
                gmaj /= 1 - float(y) * w0
            for rb in _geom_grid(1 / w0, min(self.r_out_jhat, 1e6)):
                bmaj = 1.0
                for x in self.xs:
                    bmaj *= (1 + float(x) * rb) / (
                        1 - abs(float(self.t)) * float(x) * rb
                    )
                ratio = 1 / (w0 * rb)
                log_val = (
                    math.log(gmaj)
                    + math.log(bmaj)
                    - m * math.log(rb)
                    + (cap_c + 1) * math.log(ratio)
                    - math.log(1 - ratio)
                )
                best = min(best, _exp_clamped(log_val))
        return best

    # -- coefficient access ------------------------------------------------------

    def coeff_j(self, n):
        """Exact J_n within the window; identically zero below -len(ys)."""
        if n < -len(self.ys):
            return Fraction(0)
        try:
            return self._j[n]
        except KeyError:
            raise IndexError(f"J coefficient {n} outside window") from None

    def coeff_jhat(self, m):
        try:
            return self._jhat[m]
        except KeyError:
            raise IndexError(f"Jhat coefficient {m} outside window") from None

    def eps_hat(self, m):
        if m not in self._eps_cache:
            self._eps_cache[m] = self._eps_hat_for(m, self._cap_c)
        return self._eps_cache[m]

    def ktail(self, di, dj, kcap=None):
        """Certified bound on the dropped part of the c-sum past kcap."""
        if kcap is None:
            kcap = self.kcap
        best = math.inf
        for r1, r2 in self._radius_pairs():
            ratio = r2 / r1
            log_val = (
                math.log(self.majorant_j(r1))
                + math.log(self.majorant_jhat(r2))
                - (di + 1) * math.log(r1)
                + (dj + 1) * math.log(r2)
                + (kcap + 1) * math.log(ratio)
                - math.log(1 - ratio)
            )
            best = min(best, _exp_clamped(log_val))
        return best

    def evaluate(self, z):
        """Pointwise product formula, for quadrature and difference oracles."""
        out = complex(1.0)
        for x in self.xs:
            out *= (1 - float(self.t) * float(x) * z) / (1 - float(x) * z)
        for y in self.ys:
            out *= 1 - float(y) / z
        return out


class ExponentialSymbol:
    """J(z) = exp(cp z - cm/z): the Plancherel-type (discrete Bessel) symbol.

    Coefficients are alternating factorial convolutions, exact rationals with
    a certified truncation (term ratios drop below 1/2 and stay there).
    """

    def __init__(self, cp, cm, dlo, dhi, kcap=None, tol=1e-14):
        self.cp = Fraction(cp)
        self.cm = Fraction(cm)
        self.r_in = 0.0
        self.r_out_j = math.inf
        self.r_out_jhat = math.inf
        if kcap is None:
            prod = float(self.cp * self.cm)
            kcap = max(24, int(4 * math.sqrt(max(prod, 1.0))) + 24 + max(0, -dlo))
        self.kcap = kcap
        self.dlo, self.dhi = dlo, dhi
        self._j = {}
        self._jhat = {}
        self._eps = {}
        for n in range(dlo + 1, dhi + kcap + 2):
            self._j[n], _ = self._coeff(self.cp, self.cm, n, tol)
        for m in range(-(dhi + kcap + 1), max(-(dlo + 1), 0) + 1):
            self._jhat[m], self._eps[m] = self._coeff(-self.cp, -self.cm, m, tol)

    @staticmethod
    def _coeff(cp, cm, n, tol):
        """Coefficient of z^n in exp(cp z - cm/z) = sum_c cp^{n+c} (-cm)^c /
        ((n+c)! c!); the tail after the stopping index is at most twice the
        first dropped term because the term ratio is below 1/2 from there on
        and keeps decreasing."""
        total = Fraction(0)
        c = max(0, -n)
        term = (cp ** (n + c)) * ((-cm) ** c) / (
            math.factorial(n + c) * math.factorial(c)
        )
        cpcm = abs(float(cp) * float(cm))
        while True:
            total += term
            term = term * cp * (-cm) / ((n + c + 1) * (c + 1))
            c += 1
            ratio = cpcm / ((n + c + 1) * (c + 1))
            if abs(float(term)) < tol * 0.25 and ratio < 0.5:
                return total, 2.0 * abs(float(term))

    def coeff_j(self, n):
        try:
            return self._j[n]
        except KeyError:
            raise IndexError(f"J coefficient {n} outside window") from None

    def coeff_jhat(self, m):
        try:
            return self._jhat[m]
        except KeyError:
            raise IndexError(f"Jhat coefficient {m} outside window") from None

    def eps_hat(self, m):
        return self._eps.get(m, 0.0)

    def majorant_j(self, rho):
        return math.exp(float(self.cp) * rho + float(self.cm) / rho)

    majorant_jhat = majorant_j

    def _radius_pairs(self):
        for r1 in _geom_grid(0.5, 64.0):
            for r2 in _geom_grid(1e-3, r1):
                if r2 < r1:
                    yield r1, r2

    def ktail(self, di, dj, kcap=None):
        if kcap is None:
            kcap = self.kcap
        best = math.inf
        for r1, r2 in self._radius_pairs():
            ratio = r2 / r1
            log_val = (
                float(self.cp) * r1
                + float(self.cm) / r1
                + float(self.cp) * r2
                + float(self.cm) / r2
                - (di + 1) * math.log(r1)
                + (dj + 1) * math.log(r2)
                + (kcap + 1) * math.log(ratio)
                - math.log(1 - ratio)
            )
            best = min(best, _exp_clamped(log_val))
        return best

    def evaluate(self, z):
        return cmath.exp(float(self.cp) * z - float(self.cm) / z)


def symbol(params, window, kcap=None, tol=1e-12):
    """Exact symbol for TSchurParams on the point window [dlo, dhi]."""
    dlo, dhi = window
    return ProductSymbol(params.xs, params.ys, params.t, dlo, dhi, kcap, tol)


def plancherel_symbol(a, b, t, window, kcap=None):
    """Symbol exp((1-t) a z - b/z) of the Poissonized specialization."""
    dlo, dhi = window
    cp = (1 - Fraction(t)) * Fraction(a)
    return ExponentialSymbol(cp, Fraction(b), dlo, dhi, kcap)


# ---------------------------------------------------------------------------
# Kernel entries and correlations
# ---------------------------------------------------------------------------

def kernel_entry(sym, di, dj, kcap=None):
    """K at points (di + 1/2, dj + 1/2); returns (Fraction value, error bound).

    The value is the truncated c-sum; the bound covers both the inverse
    coefficients' truncation and the dropped c-tail.
    """
    if kcap is None:
        kcap = sym.kcap
    total = Fraction(0)
    err = 0.0
    for c in range(kcap + 1):
        jn = sym.coeff_j(di + c + 1)
        if jn == 0:
            continue
        m = -dj - c - 1
        total += jn * sym.coeff_jhat(m)
        err += abs(float(jn)) * sym.eps_hat(m)
    err += sym.ktail(di, dj, kcap)
    return total, err


@dataclass
class KernelWindow:
    lo: int
    hi: int
    values: list  # rows of floats, indexed [di - lo][dj - lo]
    error_bound: float
    kcap: int

    def value(self, di, dj):
        return self.values[di - self.lo][dj - self.lo]

    def to_csv_rows(self):
        yield ["i", "j", "K", "error_bound"]
        for i in range(self.lo, self.hi + 1):
            for j in range(self.lo, self.hi + 1):
                yield [i, j, repr(self.value(i, j)), repr(self.error_bound)]


def kernel_window(sym, lo, hi):
    """Matrix of kernel values on [lo, hi]^2 with a uniform error bound."""
    vals, err = [], 0.0
    for di in range(lo, hi + 1):
        row = []
        for dj in range(lo, hi + 1):
            v, e = kernel_entry(sym, di, dj)
            row.append(float(v))
            err = max(err, e)
        vals.append(row)
    return KernelWindow(lo, hi, vals, err, sym.kcap)


def correlation(sym, points):
    """det of the kernel minor on `points` (integer form); (value, bound).

    The determinant error bound is the crude permutation-sum estimate
    n! * n * eps * (amax + eps)^(n-1), adequate for |X| <= 4.
    """
    pts = sorted(points)
    n = len(pts)
    if n == 0:
        return 1.0, 0.0
    mat = np.empty((n, n))
    eps = 0.0
    amax = 0.0
    for a, di in enumerate(pts):
        for b, dj in enumerate(pts):
            v, e = kernel_entry(sym, di, dj)
            mat[a, b] = float(v)
            eps = max(eps, e)
            amax = max(amax, abs(float(v)))
    det = float(np.linalg.det(mat))
    bound = math.factorial(n) * n * eps * (amax + eps) ** max(n - 1, 0)
    return det, bound


def correlation_bruteforce(params, points, D):
    """sum of prob(lambda) over |lambda| <= D whose configuration contains
    all the points.

    Terms with l(lambda) > len(y) vanish (the ordinary Schur factor is zero),
    so the enumeration is restricted accordingly.  Returns (exact value,
    exact residual bound 1 - truncated total mass).
    """
    ny = len(params.ys)
    z = params.normalization
    hit = Fraction(0)
    mass = Fraction(0)
    for n in range(D + 1):
        for lam in partitions(n):
            if len(lam) > ny:
                continue
            w = params.weight(lam)
            if w == 0:
                continue
            mass += w
            if contains_points(lam, points):
                hit += w
    return hit / z, 1 - mass / z


# ---------------------------------------------------------------------------
# Oracles and structural identities
# ---------------------------------------------------------------------------

def kernel_entry_quadrature(sym, di, dj, r1=None, r2=None, q=512):
    """Extract K(di, dj) from the generating function by contour quadrature.

    Trapezoid rule on circles |z| = r1 > |w| = r2 inside the annulus.  The
    sqrt branch follows each circle parameterization; the integrand is
    single-valued because every total exponent is an integer.
    """
    if r1 is None or r2 is None:
        lo = sym.r_in if sym.r_in else 0.05
        hi = min(sym.r_out_j, sym.r_out_jhat, 16.0)
        r1 = lo * (hi / lo) ** 0.66
        r2 = lo * (hi / lo) ** 0.33
    ii = di + 0.5
    jj = dj + 0.5
    theta = 2 * np.pi * np.arange(q) / q
    z = r1 * np.exp(1j * theta)
    w = r2 * np.exp(1j * theta)
    jz = np.array([sym.evaluate(v) for v in z])
    jw = np.array([sym.evaluate(v) for v in w])
    sz = math.sqrt(r1) * np.exp(1j * theta / 2)
    sw = math.sqrt(r2) * np.exp(1j * theta / 2)
    fz = sz * jz * r1 ** (-ii) * np.exp(-1j * theta * ii)
    fw = sw / jw * r2 ** jj * np.exp(1j * theta * jj)
    grid = (fz[:, None] * fw[None, :]) / (z[:, None] - w[None, :])
    return complex(grid.mean())


def dp1_derivative_check(params, test_pairs, h):
    """Central difference of the kernel generating function in the p_1(x)
    direction vs (1-t) sqrt(zw) J(z)/J(w); returns the max residual.

    Shifting p_1(x) by delta multiplies J by exp((1-t) delta z) exactly, so
    both sides are evaluated in closed form on the test points.
    """
    sym = ProductSymbol(params.xs, params.ys, params.t, -1, 1, kcap=8)
    t = float(params.t)
    worst = 0.0
    for z, w in test_pairs:
        base = cmath.sqrt(z * w) / (z - w)
        jz, jw = sym.evaluate(z), sym.evaluate(w)

        def gen(delta):
            return base * jz / jw * cmath.exp((1 - t) * delta * (z - w))

        diff = (gen(h) - gen(-h)) / (2 * h)
        exact = (1 - t) * cmath.sqrt(z * w) * jz / jw
        worst = max(worst, abs(diff - exact))
    return worst


def _geom_conv(base_get, base_eps, majorant, ratio, scale, shift, sign, probes, maxc):
    """Windowed coefficients of base * scale * sum_{c>=0} ratio^c z^{sign*c - shift}.

    sign=-1 convolves against negative powers (coefficient n picks base at
    n + c + shift), sign=+1 against positive powers (base at n - c).  Returns
    ({n: value}, {n: certified error bound}) at the probe indices.  `base_get`
    returns a Fraction or None past the stored window; `majorant` is (M, rho)
    with |base_k| <= M rho^{-k} for every k; `base_eps` bounds the error of a
    stored base coefficient.
    """
    out, bnd = {}, {}
    m_maj, rho = majorant
    fr = abs(float(ratio))
    q = fr / rho if sign < 0 else fr * rho
    for n in probes:
        s = Fraction(0)
        err = 0.0
        c_exhaust = maxc + 1
        power = Fraction(1)
        fpow = 1.0
        for c in range(maxc + 1):
            k = n + c + shift if sign < 0 else n - c
            v = base_get(k)
            if v is None:
                c_exhaust = min(c_exhaust, c)
            else:
                if v:
                    s += v * power
                err += base_eps(k) * fpow
            power *= ratio
            fpow *= fr
        out[n] = s * scale
        c0 = min(c_exhaust, maxc + 1)
        if q >= 1:
            tail = math.inf
        else:
            start = -(n + shift) if sign < 0 else -n
            tail = m_maj * rho ** start * q ** c0 / (1 - q)
        bnd[n] = abs(float(scale)) * (tail + err)
    return out, bnd


def iiks_decomposition_check(params, index_pairs, pad=30):
    """Verify (i - j) K(i,j) = sum_nu f_nu(i) g_nu(j) at the probe pairs.

    f_nu, g_nu are Laurent coefficients of the sqrt(z)-stripped generating
    functions built from J and 1/J (the rank-(2M+N) family attached to the
    x-, tx-, and y-poles); indices are points in integer form.  Returns
    (max residual, max certified bound); the check passes when the residual
    is within the bound.
    """
    pts = sorted({d for pair in index_pairs for d in pair})
    dlo, dhi = min(pts) - 1, max(pts) + 1
    sym = ProductSymbol(params.xs, params.ys, params.t, dlo - pad, dhi + pad)
    maxc = sym.kcap + pad

    n_y = len(params.ys)
    j_top = dhi + pad + sym.kcap + 1
    h_lo = -(sym.dhi + sym.kcap + 1)
    h_hi = max(-(sym.dlo + 1), 0)

    def j_get(k):
        if k < -n_y:
            return Fraction(0)
        return sym._j.get(k)

    def h_get(k):
        return sym._jhat.get(k)

    def h_eps(k):
        return sym.eps_hat(k) if h_lo <= k <= h_hi else 0.0

    def no_eps(_k):
        return 0.0

    # any interior radius yields a valid majorant
    r_j = _geom_grid(max(sym.r_in, 1e-6), min(sym.r_out_j, 1e6), 3)[1]
    r_h = _geom_grid(max(sym.r_in, 1e-6), min(sym.r_out_jhat, 1e6), 3)[1]
    maj_j = (sym.majorant_j(r_j), r_j)
    maj_h = (sym.majorant_jhat(r_h), r_h)

    f_probes = pts
    g_probes = [-d - 1 for d in pts]
    t = params.t

    f_list, g_list = [], []
    for x in params.xs:
        # F = sqrt(z) J(z) x/(1-xz); G = sqrt(w) Jhat(w) / (1-xw)
        f_list.append(_geom_conv(j_get, no_eps, maj_j, x, x, 0, +1, f_probes, maxc))
        g_list.append(_geom_conv(h_get, h_eps, maj_h, x, Fraction(1), 0, +1, g_probes, maxc))
    if t != 0:
        for x in params.xs:
            f_list.append(
                _geom_conv(j_get, no_eps, maj_j, t * x, -t * x, 0, +1, f_probes, maxc)
            )
            g_list.append(
                _geom_conv(h_get, h_eps, maj_h, t * x, Fraction(1), 0, +1, g_probes, maxc)
            )
    for y in params.ys:
        # F = -sqrt(z) J(z)/(z-y);  G = sqrt(w) Jhat(w) y/(w-y)
        f_list.append(
            _geom_conv(j_get, no_eps, maj_j, y, Fraction(-1), 1, -1, f_probes, maxc)
        )
        g_list.append(_geom_conv(h_get, h_eps, maj_h, y, y, 1, -1, g_probes, maxc))

    worst = 0.0
    worst_bound = 0.0
    for di, dj in index_pairs:
        lhs_val, lhs_err = kernel_entry(sym, di, dj)
        lhs = Fraction(di - dj) * lhs_val
        rhs = Fraction(0)
        bound = abs(di - dj) * lhs_err
        for (fw, fb), (gw, gb) in zip(f_list, g_list):
            fv, gv = fw[di], gw[-dj - 1]
            rhs += fv * gv
            bound += (
                fb[di] * abs(float(gv))
                + abs(float(fv)) * gb[-dj - 1]
                + fb[di] * gb[-dj - 1]
            )
        worst = max(worst, abs(float(lhs - rhs)))
        worst_bound = max(worst_bound, bound)
    return worst, worst_bound


# ---------------------------------------------------------------------------
# Gap probabilities
# ---------------------------------------------------------------------------

def gap_probability(sym, h, L=None, tol=1e-10):
    """P(lambda_1 <= h) = det(I - K) on points {h, h+1, ...}.

    Truncates to {h, ..., h+L}; when L is not given it grows until the
    certified trace tail of the dropped block is below tol (for the
    symmetrizable kernels used here that tail dominates the dropped block's
    operator norm).  Returns (value, reported bound); the bound combines the
    trace tail with entrywise truncation errors through a standard Fredholm
    perturbation factor.
    """
    l_max = sym.dhi - h
    if L is None:
        L = min(8, l_max)
        while L < l_max and _trace_tail(sym, h + L) >= tol:
            L = min(2 * L, l_max)
    if L > l_max:
        raise ValueError(f"symbol window ends at {sym.dhi}; cannot truncate at {h + L}")
    tail = _trace_tail(sym, h + L)
    if tail >= tol:
        raise ValueError(
            f"insufficient truncation: trace tail {tail:.3g} at L={L}; "
            "rebuild the symbol with a larger window"
        )
    n = L + 1
    mat = np.empty((n, n))
    eps = 0.0
    for a in range(n):
        for b in range(n):
            v, e = kernel_entry(sym, h + a, h + b)
            mat[a, b] = float(v)
            eps = max(eps, e)
    det = float(np.linalg.det(np.eye(n) - mat))
    trace = float(np.sum(np.abs(np.diag(mat))))
    bound = (tail + n * n * eps) * math.exp(1.0 + 2 * trace + tail)
    return det, bound


def _trace_tail(sym, beyond):
    """Bound on sum_{d > beyond} |K(d, d)| from the geometric majorants."""
    best = math.inf
    for r1, r2 in sym._radius_pairs():
        m = sym.majorant_j(r1) * sym.majorant_jhat(r2)
        rr = r2 / r1
        best = min(best, m * rr ** (beyond + 2) / (1 - rr) ** 2)
    return best
