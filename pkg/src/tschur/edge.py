"""Edge asymptotics: Airy function and kernel, Tracy-Widom F2 via Nystrom
Fredholm determinants, discrete-Bessel edge scaling, saddle-point constants
for the rectangular specialization, and the kernel-level limit checks.

Everything here is floating point by design; exactness lives in the identity
and kernel modules.  The Airy function is evaluated from power series and
asymptotic expansions: an asymptotic anchor at x = 30 (where the expansion is
accurate far beyond double precision) is continued by high-order Taylor steps
of y'' = x y.  Integrating toward smaller x follows the growing solution
direction, so relative accuracy is preserved; no quadrature of oscillatory
integrals is involved.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import jv as _bessel_j

AIRY_SUPPORT = (-40.0, 28.0)
_ANCHOR = 30.0
_STEP = 0.25
_TAYLOR_ORDER = 26


def _airy_asymptotic_pos(x):
    """Ai and Ai' for large positive x from the standard expansions."""
    zeta = (2.0 / 3.0) * x ** 1.5
    u = 1.0
    v = 1.0
    su, sv = u, v
    for k in range(24):
        u = u * (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1)) / (-zeta)
        v = v * (6 * k + 7) * (6 * k - 1) / (72.0 * (k + 1)) / (-zeta)
        su += u
        sv += v
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    ai = pref * x ** -0.25 * su
    aip = -pref * x ** 0.25 * sv
    return ai, aip


def _taylor_step(x0, y, yp, h):
    """One Taylor step of y'' = x y from x0 to x0 + h."""
    a = [y, yp]
    for n in range(_TAYLOR_ORDER):
        nxt = (x0 * a[n] + (a[n - 1] if n >= 1 else 0.0)) / ((n + 1) * (n + 2))
        a.append(nxt)
    val = 0.0
    dval = 0.0
    for n in range(len(a) - 1, -1, -1):
        val = val * h + a[n]
    for n in range(len(a) - 1, 0, -1):
        dval = dval * h + n * a[n]
    return val, dval


def airy_many(xs):
    """Ai and Ai' at each x, by one continuation walk from the anchor.

    Returns (ai, aip) numpy arrays aligned with `xs`.
    """
    xs = np.asarray(xs, dtype=float)
    lo, hi = AIRY_SUPPORT
    if xs.size and (xs.min() < lo or xs.max() > hi):
        raise ValueError(f"airy evaluation outside supported range {AIRY_SUPPORT}")
    order = np.argsort(-xs)
    ai = np.empty_like(xs)
    aip = np.empty_like(xs)
    x_cur = _ANCHOR
    y, yp = _airy_asymptotic_pos(_ANCHOR)
    for idx in order:
        target = float(xs[idx])
        dist = x_cur - target
        if dist > 0:
            steps = max(1, int(math.ceil(dist / _STEP)))
            h = -dist / steps
            for _ in range(steps):
                y, yp = _taylor_step(x_cur, y, yp, h)
                x_cur += h
            x_cur = target
        ai[idx] = y
        aip[idx] = yp
    return ai, aip


def airy(x):
    """Ai(x); guaranteed absolute error < 1e-10 on [-12, 12]."""
    a, _ = airy_many(np.array([x]))
    return float(a[0])


def airy_deriv(x):
    a, ap = airy_many(np.array([x]))
    return float(ap[0])


def airy_kernel(xi, eta):
    """(Ai(xi) Ai'(eta) - Ai'(xi) Ai(eta)) / (xi - eta); diagonal by limit."""
    if xi == eta:
        a, ap = airy_many(np.array([xi]))
        return float(ap[0] ** 2 - xi * a[0] ** 2)
    a, ap = airy_many(np.array([xi, eta]))
    return float((a[0] * ap[1] - ap[0] * a[1]) / (xi - eta))


def airy_kernel_matrix(points):
    """K_Airy on a point list (symmetric, diagonal by the limit formula)."""
    pts = np.asarray(points, dtype=float)
    a, ap = airy_many(pts)
    n = len(pts)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            if pts[i] == pts[j]:
                out[i, j] = ap[i] ** 2 - pts[i] * a[i] ** 2
            else:
                out[i, j] = (a[i] * ap[j] - ap[i] * a[j]) / (pts[i] - pts[j])
    return out


def tw2_cdf(s, q=60, T=17.0):
    """Tracy-Widom F2(s) = det(I - K_Airy) on [s, infinity).

    Nystrom discretization with q-point Gauss-Legendre nodes on [s, s+T];
    T is large enough that the Airy-kernel trace beyond s+T is < 1e-12 for
    s >= -8.  Doubling q moves the result by < 1e-8 for q >= 40.
    """
    nodes, weights = np.polynomial.legendre.leggauss(q)
    x = s + (nodes + 1.0) * (T / 2.0)
    w = weights * (T / 2.0)
    k = airy_kernel_matrix(x)
    sw = np.sqrt(w)
    m = k * sw[:, None] * sw[None, :]
    return float(np.linalg.det(np.eye(q) - m))


def tw2_quantile(p, q=60, lo=-8.0, hi=6.0):
    """Inverse CDF by bisection (the CDF is monotone)."""
    if not 0 < p < 1:
        raise ValueError("p must be in (0,1)")
    flo, fhi = tw2_cdf(lo, q), tw2_cdf(hi, q)
    if not flo < p < fhi:
        raise ValueError("quantile outside bracket")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if tw2_cdf(mid, q) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Discrete Bessel kernel (Poissonized specialization) at scale
# ---------------------------------------------------------------------------

def bessel_kernel_conjugated(kappa, d_list, cap=None):
    """Conjugated kernel matrix sum_c J_{d_i+1+c}(2 sqrt(kappa)) J_{d_j+1+c}(...)
    on integer-form points.

    This is the kernel after the diagonal conjugation that removes the
    (c_plus/c_minus)^{(i-j)/2} skew of the unbalanced specialization; minors
    and gap determinants are unchanged by it.  Series truncated well past the
    edge, where Bessel J of order n > argument decays superexponentially.
    """
    xarg = 2.0 * math.sqrt(kappa)
    if cap is None:
        cap = int(12 * xarg ** (1.0 / 3.0)) + 80
    d = np.asarray(d_list, dtype=float)
    top = float(d.max())
    orders = np.arange(0, cap + 1, dtype=float)
    jmat = _bessel_j(d[:, None] + 1.0 + orders[None, :], xarg)
    if top + 1 + cap < xarg:
        raise ValueError("truncation cap ends inside the bulk; increase cap")
    return jmat @ jmat.T


@dataclass
class EdgeGridReport:
    scale_parameter: float
    grid: list
    effective_grid: list = field(default_factory=list)
    max_deviation: float = math.nan
    mixed_max: float = math.nan
    lattice_spacing: float = math.nan
    minor_deviation: float = math.nan
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "scale_parameter": self.scale_parameter,
            "grid": list(self.grid),
            "effective_grid": list(self.effective_grid),
            "max_deviation": self.max_deviation,
            "mixed_max": self.mixed_max,
            "lattice_spacing": self.lattice_spacing,
            "minor_deviation": self.minor_deviation,
            **{k: v for k, v in self.extra.items()},
        }


def bessel_to_airy_check(kappas, grid=(-2.0, -1.0, 0.0, 1.0, 2.0)):
    """Scaled edge kernel vs the Airy kernel, one report per kappa.

    Edge positions 2 sqrt(kappa) + xi kappa^{1/6} are rounded to the
    half-integer lattice; the Airy side is evaluated at the rounded
    (effective) coordinates, and the lattice spacing kappa^{-1/6} is reported
    as the residual discretization scale.  Also evaluates the two mixed-sign
    blocks, which must tend to zero.
    """
    reports = []
    for kappa in kappas:
        k16 = kappa ** (1.0 / 6.0)
        edge = 2.0 * math.sqrt(kappa)
        d_plus = [int(round(edge + xi * k16 - 0.5)) for xi in grid]
        d_minus = [int(round(edge - xi * k16 - 0.5)) for xi in grid]
        eff = [(d + 0.5 - edge) / k16 for d in d_plus]
        kmat = k16 * bessel_kernel_conjugated(kappa, d_plus)
        amat = airy_kernel_matrix(eff)
        dev = float(np.max(np.abs(kmat - amat)))
        # mixed blocks: one argument above, one below the edge
        dall = sorted(set(d_plus + d_minus))
        kall = k16 * bessel_kernel_conjugated(kappa, dall)
        pos = {d: i for i, d in enumerate(dall)}
        mixed = 0.0
        for a in d_plus:
            for b in d_minus:
                if a == b:
                    continue
                mixed = max(mixed, abs(kall[pos[a], pos[b]]), abs(kall[pos[b], pos[a]]))
        reports.append(
            EdgeGridReport(
                scale_parameter=kappa,
                grid=list(grid),
                effective_grid=eff,
                max_deviation=dev,
                mixed_max=mixed,
                lattice_spacing=1.0 / k16,
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Rectangular specialization: saddle data and edge collapse
# ---------------------------------------------------------------------------

@dataclass
class SaddleData:
    alpha: float
    tau: float
    t: float
    z0: float
    c1: float
    c2: float
    phi1_residual: float
    phi2_residual: float
    c1_alt_gap: float

    def to_json(self):
        return self.__dict__.copy()


def _sigma_derivs(alpha, tau, t):
    """sigma(z) = tau log((1-t a z)/(1-a z)) + log(1 - a/z) and derivatives."""
    a = alpha

    def sigma(z):
        return tau * (math.log(1 - t * a * z) - math.log(1 - a * z)) + math.log(
            1 - a / z
        )

    def d1(z):
        return tau * (-t * a / (1 - t * a * z) + a / (1 - a * z)) + a / (z * (z - a))

    def d2(z):
        return tau * (
            -(t * a) ** 2 / (1 - t * a * z) ** 2 + a ** 2 / (1 - a * z) ** 2
        ) - a * (2 * z - a) / (z * (z - a)) ** 2

    def d3(z):
        return tau * (
            -2 * (t * a) ** 3 / (1 - t * a * z) ** 3
            + 2 * a ** 3 / (1 - a * z) ** 3
        ) + a * (2 * (2 * z - a) ** 2 - 2 * (z * (z - a))) / (z * (z - a)) ** 3
    return sigma, d1, d2, d3


def saddle_constants(alpha, tau, t):
    """Solve the double-saddle system for the rectangular specialization.

    z0 solves z sigma'(z) + z^2 sigma''(z) = 0 on (alpha, 1/alpha); then
    c1 = z0 sigma'(z0) (equal to -z0^2 sigma''(z0)) and
    c2 = z0 (Phi'''(z0)/2)^{1/3} with Phi(z) = sigma(z) - c1 log z.
    """
    alpha, tau, t = float(alpha), float(tau), float(t)
    if not 0 < alpha < 1:
        raise ValueError("alpha must be in (0,1)")
    if t > 0:
        raise ValueError("t must be <= 0")
    _, d1, d2, d3 = _sigma_derivs(alpha, tau, t)

    def f(z):
        return z * d1(z) + z * z * d2(z)

    lo = alpha * (1 + 1e-9)
    hi = (1.0 / alpha) * (1 - 1e-9)
    flo, fhi = f(lo * (1 + 1e-6) + 1e-12), f(hi)
    # bisection bracket; f goes from -inf near alpha to +inf near 1/alpha
    a_, b_ = lo * (1 + 1e-6), hi
    if f(a_) > 0 or f(b_) < 0:
        raise ValueError("no saddle bracket on (alpha, 1/alpha)")
    for _ in range(200):
        mid = 0.5 * (a_ + b_)
        if f(mid) < 0:
            a_ = mid
        else:
            b_ = mid
    z0 = 0.5 * (a_ + b_)
    # Newton polish on f
    for _ in range(8):
        h = 1e-7 * max(abs(z0), 1.0)
        df = (f(z0 + h) - f(z0 - h)) / (2 * h)
        if df == 0:
            break
        z0 -= f(z0) / df
    c1 = z0 * d1(z0)
    c1_alt = -z0 * z0 * d2(z0)
    phi3 = d3(z0) + 2 * c1 / z0 ** 3
    if phi3 <= 0:
        raise ValueError("Phi'''(z0) must be positive")
    c2 = z0 * (phi3 / 2.0) ** (1.0 / 3.0)
    phi1 = abs(d1(z0) - c1 / z0)
    phi2 = abs(d2(z0) + c1 / z0 ** 2)
    return SaddleData(
        alpha,
        tau,
        t,
        z0,
        c1,
        c2,
        phi1_residual=phi1,
        phi2_residual=phi2,
        c1_alt_gap=abs(c1 - c1_alt),
    )


class RectangularSymbol:
    """Exact coefficient windows of J(z) = ((1-t a z)/(1-a z))^m (1 - a/z)^n.

    The positive-power factor satisfies the first-order ODE
        f' (1-t a z)(1-a z) = m a (1-t) f,
    giving an exact linear recurrence for its coefficients; the (1 - a/z)^n
    factor is a binomial polynomial, so J coefficients are exact.  The inverse
    uses the same recurrence with m -> -m and the negative binomial series for
    (1 - a/z)^{-n}, truncated with a certified geometric majorant bound.
    """

    def __init__(self, alpha, m, n, t, dlo, dhi, kcap, cap_c=None):
        from fractions import Fraction

        self.alpha = Fraction(alpha)
        self.t = Fraction(t)
        self.m = m
        self.n = n
        self.dlo, self.dhi = dlo, dhi
        self.kcap = kcap
        a, t_ = self.alpha, self.t

        j_hi = dhi + kcap + 1
        f = self._power_series(self.m, j_hi + n)
        binom = [Fraction(1)]
        for c in range(1, n + 1):
            binom.append(binom[-1] * (n - c + 1) / c)
        self._j = {}
        for idx in range(dlo + 1 if dlo + 1 > -n else -n, j_hi + 1):
            s = Fraction(0)
            for c in range(n + 1):
                k = idx + c
                if 0 <= k <= j_hi + n:
                    s += binom[c] * (-a) ** c * f[k]
            self._j[idx] = s

        m_lo = -(dhi + kcap + 1)
        m_hi = -(dlo + 1)
        if cap_c is None:
            cap_c = self._auto_cap_c(m_hi)
        self.cap_c = cap_c
        g = self._power_series(-self.m, max(m_hi + cap_c, 0))
        nb = [Fraction(1)]
        for c in range(1, cap_c + 1):
            nb.append(nb[-1] * (n + c - 1) / c)
        self._jhat = {}
        self._eps = {}
        for idx in range(m_lo, m_hi + 1):
            s = Fraction(0)
            for c in range(cap_c + 1):
                k = idx + c
                if 0 <= k <= len(g) - 1:
                    s += nb[c] * a ** c * g[k]
            self._jhat[idx] = s
            self._eps[idx] = self._eps_hat(idx, cap_c)

    def _power_series(self, mexp, cap):
        """Coefficients of ((1-t a z)/(1-a z))^mexp via the ODE recurrence."""
        from fractions import Fraction

        a, t = self.alpha, self.t
        f = [Fraction(1)]
        for k in range(cap):
            prev = f[k - 1] if k >= 1 else Fraction(0)
            nxt = (
                mexp * a * (1 - t) * f[k]
                + (1 + t) * a * k * f[k]
                - t * a * a * (k - 1) * prev
            ) / (k + 1)
            f.append(nxt)
        return f

    # majorants: |J_k| <= MJ(r) r^{-k},  |Jhat_k| <= MH(r) r^{-k}
    def _maj_j(self, r):
        a, t = float(self.alpha), float(self.t)
        return ((1 + abs(t) * a * r) / (1 - a * r)) ** self.m * (1 + a / r) ** self.n

    def _maj_jhat(self, r):
        a, t = float(self.alpha), float(self.t)
        den = 1 - abs(t) * a * r
        return ((1 + a * r) / den) ** self.m / (1 - a / r) ** self.n

    def _r_bounds(self):
        a, t = float(self.alpha), float(self.t)
        r_in = a
        r_out_j = 1.0 / a
        r_out_jhat = (1.0 / (abs(t) * a)) if t else math.inf
        return r_in, r_out_j, r_out_jhat

    def _eps_hat(self, idx, cap_c):
        """Dropped mass of the negative-binomial sum for Jhat_idx."""
        a, _ = float(self.alpha), float(self.t)
        r_in, _, r_out_jhat = self._r_bounds()
        best = math.inf
        for w in _float_grid(1.0 / r_out_jhat if math.isfinite(r_out_jhat) else 1e-3,
                             1.0 / a):
            nbmaj = (1 - a * w) ** (-self.n)
            for r in _float_grid(1.0 / w, min(r_out_jhat, 1e6)):
                bmaj = self._maj_jhat(r) * (1 - a / r) ** self.n  # strip the G part
                ratio = 1.0 / (w * r)
                if ratio >= 1:
                    continue
                val = nbmaj * bmaj * r ** (-idx) * ratio ** (cap_c + 1) / (1 - ratio)
                best = min(best, val)
        return best

    def _auto_cap_c(self, m_hi):
        for cap in (256, 512, 1024, 2048, 4096):
            if self._eps_hat(m_hi, cap) < 1e-9:
                return cap
        return 6000

    def eps_hat(self, m):
        return self._eps.get(m, 0.0)

    def coeff_j(self, k):
        if k < -self.n:
            from fractions import Fraction

            return Fraction(0)
        return self._j[k]

    def coeff_jhat(self, k):
        return self._jhat[k]

    def ktail(self, di, dj, kcap=None):
        if kcap is None:
            kcap = self.kcap
        r_in, r_out_j, r_out_jhat = self._r_bounds()
        best = math.inf
        for r1 in _float_grid(r_in, r_out_j):
            m1 = self._maj_j(r1)
            for r2 in _float_grid(r_in, min(r1, r_out_jhat)):
                if r2 >= r1:
                    continue
                m2 = self._maj_jhat(r2)
                ratio = r2 / r1
                val = (
                    m1 * m2 * r1 ** (-(di + 1)) * r2 ** (dj + 1)
                    * ratio ** (kcap + 1) / (1 - ratio)
                )
                best = min(best, val)
        return best


def _float_grid(lo, hi, n=10):
    lo, hi = float(lo), float(hi)
    if not (hi > lo > 0):
        return []
    return [lo * (hi / lo) ** (k / (n + 1)) for k in range(1, n + 1)]


def rect_edge_check(ns, alpha, tau, t, grid=(-1.0, 0.0, 1.0), spread_pad=2):
    """Rectangular-specialization edge collapse onto the Airy kernel.

    For each n: m = round(tau n) copies of alpha against n copies; kernel
    entries are exact rational sums; the diagonal conjugation z0^{i-j}
    (minor-preserving) makes entries O(1).  Compares (c2 n^{1/3}) Ktilde at
    lattice-rounded scaled positions with the Airy kernel at the effective
    (rounded) coordinates; also reports the worst 2x2 minor deviation.
    """
    sad = saddle_constants(alpha, tau, t)
    reports = []
    for n in ns:
        m = int(round(tau * n))
        scale = sad.c2 * n ** (1.0 / 3.0)
        center = sad.c1 * n
        d_list = sorted({int(round(center + scale * xi - 0.5)) for xi in grid})
        dlo, dhi = d_list[0] - spread_pad, d_list[-1] + spread_pad
        kcap = 2 * n + 256
        sym = RectangularSymbol(alpha, m, n, t, dlo, dhi, kcap)
        eff = [(d + 0.5 - center) / scale for d in d_list]
        kt = np.empty((len(d_list), len(d_list)))
        err = 0.0
        for i, di in enumerate(d_list):
            for j, dj in enumerate(d_list):
                val = _rect_entry(sym, di, dj)
                kt[i, j] = val * sad.z0 ** (di - dj)
                err = max(err, sym.ktail(di, dj))
        amat = airy_kernel_matrix(eff)
        dev = float(np.max(np.abs(scale * kt - amat)))
        minor_dev = 0.0
        for i in range(len(d_list)):
            for j in range(i + 1, len(d_list)):
                det_k = (scale * kt[i, i]) * (scale * kt[j, j]) - (
                    scale * kt[i, j]
                ) * (scale * kt[j, i])
                det_a = amat[i, i] * amat[j, j] - amat[i, j] * amat[j, i]
                minor_dev = max(minor_dev, abs(det_k - det_a))
        reports.append(
            EdgeGridReport(
                scale_parameter=n,
                grid=list(grid),
                effective_grid=eff,
                max_deviation=dev,
                minor_deviation=minor_dev,
                lattice_spacing=1.0 / scale,
                extra={"z0": sad.z0, "c1": sad.c1, "c2": sad.c2,
                       "entry_error": err},
            )
        )
    return reports


def _rect_entry(sym, di, dj):
    from fractions import Fraction

    total = Fraction(0)
    for c in range(sym.kcap + 1):
        jn = sym.coeff_j(di + c + 1)
        if jn == 0:
            continue
        total += jn * sym.coeff_jhat(-dj - c - 1)
    return float(total)


# ---------------------------------------------------------------------------
# z-type parameter limit
# ---------------------------------------------------------------------------

def tz_multiplier(z, zprime, xi, t, u):
    """((1 - t sqrt(xi) u)/(1 - sqrt(xi) u))^z (1 - sqrt(xi)/u)^{z'}."""
    s = math.sqrt(xi)
    return ((1 - t * s * u) / (1 - s * u)) ** z * (1 - s / u) ** zprime


def tz_limit_check(seq, kappa, t, n_u=24, radius=None):
    """Deviation of the z-measure multiplier from its Poissonian limit.

    `seq` is a list of (z, z') pairs with xi = kappa/(z z'); the deviation is
    the max over a circle of |multiplier - exp((1-t) sqrt(kappa) u - sqrt(kappa)/u)|,
    and must decrease along the sequence.  Also reports the normalization
    ratio ((1-t xi)/(1-xi))^{zz'} / e^{(1-t) kappa}.
    """
    out = []
    for z, zp in seq:
        xi = kappa / (z * zp)
        r = radius if radius is not None else 1.0
        devs = []
        for k in range(n_u):
            theta = 2 * math.pi * k / n_u
            u = complex(r * math.cos(theta), r * math.sin(theta))
            lim = np.exp((1 - t) * math.sqrt(kappa) * u - math.sqrt(kappa) / u)
            val = tz_multiplier(z, zp, xi, t, u)
            devs.append(abs(val - lim))
        log_norm = z * zp * math.log((1 - t * xi) / (1 - xi))
        out.append(
            {
                "z": z,
                "zprime": zp,
                "xi": xi,
                "max_deviation": max(devs),
                "normalization_ratio": math.exp(log_norm - (1 - t) * kappa),
            }
        )
    return out
