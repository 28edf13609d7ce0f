"""Exact graded verification of the Cauchy- and Gessel-type identities.

Every comparison is exact rational equality per grade of a bookkeeping
variable u; there are no tolerances here.  Scaling both variable sets by u
multiplies the weight-n part of each side by u^{2n}, so an identity between
infinite sums and infinite products becomes finitely many coefficient
equalities once both sides are truncated at grade 2D.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .partitions import conjugate, partitions
from .series import TruncatedSeries, det_ring, geometric
from .symfunc import PowerSumSpec, e_t, h_t, schur, t_schur


@dataclass
class IdentityReport:
    name: str
    params: dict
    status: str  # 'exact-equal' | 'mismatch'
    first_mismatch: tuple | None = None  # (grade, lhs, rhs)
    grades_checked: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "exact-equal"

    def to_json(self):
        out = {
            "identity": self.name,
            "params": {k: str(v) for k, v in self.params.items()},
            "status": self.status,
            "grades_checked": self.grades_checked,
        }
        if self.first_mismatch is not None:
            grade, lhs, rhs = self.first_mismatch
            out["first_mismatch"] = {"grade": grade, "lhs": str(lhs), "rhs": str(rhs)}
        out.update({k: str(v) for k, v in self.detail.items()})
        return out


def _compare_graded(name, params, lhs, rhs):
    """Compare two equal-cap coefficient lists grade by grade."""
    assert len(lhs) == len(rhs)
    for g, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return IdentityReport(name, params, "mismatch", (g, a, b), g)
    return IdentityReport(name, params, "exact-equal", None, len(lhs))


def _product_series(xs, ys, t, cap, inverted=False):
    """prod_{i,j} (1 - t x_i y_j u^2)/(1 - x_i y_j u^2) to grade `cap` in u.

    With `inverted`, the reciprocal product (the dual-Cauchy right side).
    """
    t = Fraction(t)
    out = TruncatedSeries.one(cap)
    for x in xs:
        for y in ys:
            c = Fraction(x) * Fraction(y)
            num = TruncatedSeries([1, 0, -t * c], cap)
            den_inv = TruncatedSeries(
                [c ** (k // 2) if k % 2 == 0 else 0 for k in range(cap + 1)], cap
            )  # 1/(1 - c u^2)
            if inverted:
                out = out * den_inv.inverse() * num.inverse()
            else:
                out = out * num * den_inv
    return out


def verify_t_cauchy(xs, ys, t, D):
    """sum_lambda S_lambda(x;t) s_lambda(y) u^{2|lambda|}  vs  the mixed
    Cauchy product, through grade 2D."""
    params = {"x": xs, "y": ys, "t": t, "D": D}
    cap = 2 * D
    spec_x = PowerSumSpec.from_variables(xs, D)
    spec_y = PowerSumSpec.from_variables(ys, D)
    lhs = [Fraction(0)] * (cap + 1)
    for n in range(D + 1):
        acc = Fraction(0)
        for lam in partitions(n):
            sy = schur(spec_y, lam)
            if sy == 0:
                continue
            acc += t_schur(spec_x, t, lam) * sy
        lhs[2 * n] = acc
    rhs = _product_series(xs, ys, t, cap)
    return _compare_graded("t-cauchy", params, lhs, rhs.coeffs)


def verify_dual_cauchy(xs, ys, t, D):
    """sum_lambda (-1)^{|lambda|} S_lambda(x;t) s_{lambda'}(y) u^{2|lambda|}
    vs  prod (1 - x_i y_j u^2)/(1 - t x_i y_j u^2)."""
    params = {"x": xs, "y": ys, "t": t, "D": D}
    cap = 2 * D
    spec_x = PowerSumSpec.from_variables(xs, D)
    spec_y = PowerSumSpec.from_variables(ys, D)
    lhs = [Fraction(0)] * (cap + 1)
    for n in range(D + 1):
        acc = Fraction(0)
        sign = Fraction(-1) ** n
        for lam in partitions(n):
            sy = schur(spec_y, conjugate(lam))
            if sy == 0:
                continue
            acc += sign * t_schur(spec_x, t, lam) * sy
        lhs[2 * n] = acc
    rhs = _product_series(xs, ys, t, cap, inverted=True)
    return _compare_graded("dual-t-cauchy", params, lhs, rhs.coeffs)


def _graded_toeplitz_symbol_h(xs, ys, t, cap):
    """phi_m(u) for the length-truncation symbol H_{x,t}(z) H_y(z^{-1}).

    With both variable sets scaled by u, phi_m = sum_{a-b=m} h^(t)_a(x)
    h_b(y) u^{a+b}, a truncated series in u.
    """
    spec_x = PowerSumSpec.from_variables(xs, cap)
    spec_y = PowerSumSpec.from_variables(ys, cap)
    hx = h_t(spec_x, t, cap)
    hy = h_t(spec_y, Fraction(0), cap)

    def phi(m):
        coeffs = [Fraction(0)] * (cap + 1)
        for a in range(cap + 1):
            b = a - m
            if b < 0 or a + b > cap:
                continue
            coeffs[a + b] = hx[a] * hy[b]
        return TruncatedSeries(coeffs, cap)

    return phi


def _graded_toeplitz_symbol_e(xs, ys, t, cap):
    """psi_m(u) for the row-truncation symbol E_{x,t}(z^{-1}) E_y(z)."""
    spec_x = PowerSumSpec.from_variables(xs, cap)
    spec_y = PowerSumSpec.from_variables(ys, cap)
    ex = e_t(spec_x, t, cap)
    ey = e_t(spec_y, Fraction(0), cap)

    def psi(m):
        coeffs = [Fraction(0)] * (cap + 1)
        for b in range(cap + 1):
            a = b - m
            if a < 0 or a + b > cap:
                continue
            coeffs[a + b] = ex[a] * ey[b]
        return TruncatedSeries(coeffs, cap)

    return psi


def verify_gessel_length(xs, ys, t, k, D):
    """Length truncation: sum over l(lambda) <= k vs det T_k(H_{x,t} H_y(1/z))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    params = {"x": xs, "y": ys, "t": t, "k": k, "D": D}
    cap = 2 * D
    spec_x = PowerSumSpec.from_variables(xs, D)
    spec_y = PowerSumSpec.from_variables(ys, D)
    lhs = [Fraction(0)] * (cap + 1)
    for n in range(D + 1):
        acc = Fraction(0)
        for lam in partitions(n):
            if len(lam) > k:
                continue
            sy = schur(spec_y, lam)
            if sy == 0:
                continue
            acc += t_schur(spec_x, t, lam) * sy
        lhs[2 * n] = acc
    phi = _graded_toeplitz_symbol_h(xs, ys, t, cap)
    rhs = det_ring([[phi(j - i) for j in range(k)] for i in range(k)])
    return _compare_graded("gessel-length", params, lhs, rhs.coeffs)


def verify_gessel_row(xs, ys, t, h, D):
    """First-row truncation: sum over lambda_1 <= h vs det T_h(E_{x,t}(1/z) E_y(z))."""
    if h < 1:
        raise ValueError("h must be >= 1")
    params = {"x": xs, "y": ys, "t": t, "h": h, "D": D}
    cap = 2 * D
    spec_x = PowerSumSpec.from_variables(xs, D)
    spec_y = PowerSumSpec.from_variables(ys, D)
    lhs = [Fraction(0)] * (cap + 1)
    for n in range(D + 1):
        acc = Fraction(0)
        for lam in partitions(n):
            if lam and lam[0] > h:
                continue
            sy = schur(spec_y, lam)
            if sy == 0:
                continue
            acc += t_schur(spec_x, t, lam) * sy
        lhs[2 * n] = acc
    psi = _graded_toeplitz_symbol_e(xs, ys, t, cap)
    rhs = det_ring([[psi(j - i) for j in range(h)] for i in range(h)])
    return _compare_graded("gessel-row", params, lhs, rhs.coeffs)


def verify_measure_normalization(xs, ys, t, D):
    """Truncated total mass of the measure lies in [1 - tail, 1].

    The partial sums are computed exactly; the residual is dominated by the
    geometric majorant bound  sum_{n>D} c_n <= F(rho) rho^{-D} / (rho - 1)
    for any rho in (1, 1/max(x_i y_j)), where F is the (positive-coefficient)
    mixed Cauchy product evaluated at rho and c_n its weight-n coefficient.
    """
    from .measure import TSchurParams  # local import to avoid a cycle

    params = {"x": xs, "y": ys, "t": t, "D": D}
    p = TSchurParams.from_lists(xs, ys, t)
    total = Fraction(0)
    for n in range(D + 1):
        for lam in partitions(n):
            total += p.prob(lam)

    rmax = max(Fraction(x) * Fraction(y) for x in xs for y in ys)
    if rmax >= 1:
        raise ValueError("need max x_i y_j < 1")
    rho = (1 + 1 / rmax) / 2
    F = Fraction(1)
    for x in xs:
        for y in ys:
            c = Fraction(x) * Fraction(y)
            F *= (1 - Fraction(t) * c * rho) / (1 - c * rho)
    tail = F * rho ** (-D) / (rho - 1) / p.normalization
    ok = 1 - tail <= total <= 1
    report = IdentityReport(
        "measure-normalization",
        params,
        "exact-equal" if ok else "mismatch",
        None if ok else (D, total, 1 - tail),
        D,
    )
    report.detail = {"total_mass": float(total), "tail_bound": float(tail)}
    return report
