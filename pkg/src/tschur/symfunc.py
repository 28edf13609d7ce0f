"""Specializations of symmetric functions and t-deformed Schur evaluation.

Symmetric functions are represented only through their power-sum values
p_1..p_D (exact rationals).  The t-deformed complete/elementary families come
from the generating products

    H_t(z) = prod_i (1 - t x_i z)/(1 - x_i z) = exp( sum_k (1-t^k) p_k z^k / k )
    E_t(z) = prod_i (1 + x_i z)/(1 + t x_i z) = exp( sum_k (-1)^(k-1)(1-t^k) p_k z^k / k )

and satisfy E_t(z) H_t(-z) = 1.  The t-Schur value on a specialization is the
Jacobi-Trudi determinant det(h^(t)_{lambda_i - i + j}); its dual form is the
elementary determinant over the conjugate shape.
"""

from dataclasses import dataclass
from fractions import Fraction

from .partitions import check_partition, conjugate
from .series import TruncatedSeries, det_fraction, exp_series


@dataclass(frozen=True)
class PowerSumSpec:
    """Power-sum values p_1..p_D of a specialization.

    `origin` records how the values arose: ('variables', (x1,...,xm)),
    ('principal', z) meaning p_k = z for all k, or ('free', None).
    """

    p: tuple
    origin: tuple = ("free", None)

    @property
    def cap(self):
        return len(self.p)

    def pk(self, k):
        if not 1 <= k <= len(self.p):
            raise ValueError(f"p_{k} not available (capacity {len(self.p)})")
        return self.p[k - 1]

    @classmethod
    def from_power_sums(cls, values):
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_variables(cls, xs, cap):
        xs = tuple(Fraction(x) for x in xs)
        p = []
        for k in range(1, cap + 1):
            p.append(sum((x ** k for x in xs), Fraction(0)))
        return cls(tuple(p), ("variables", xs))

    @classmethod
    def principal(cls, z, cap):
        z = Fraction(z)
        return cls((z,) * cap, ("principal", z))

    @classmethod
    def plancherel(cls, a, cap):
        """Exponential specialization p_k = a * delta_{k1}."""
        a = Fraction(a)
        return cls((a,) + (Fraction(0),) * (cap - 1), ("plancherel", a))

    def scaled(self, c):
        """Specialization with every variable scaled by c: p_k -> c^k p_k."""
        c = Fraction(c)
        return PowerSumSpec(tuple((c ** k) * v for k, v in enumerate(self.p, start=1)))


def probabilistic_valid(t):
    """Nonnegative weights require t <= 0."""
    return Fraction(t) <= 0


def h_t(spec, t, n_max):
    """Coefficients h^(t)_0..h^(t)_{n_max} as a TruncatedSeries."""
    if n_max > spec.cap:
        raise ValueError(f"n_max {n_max} exceeds spec capacity {spec.cap}")
    t = Fraction(t)
    L = [Fraction(0)] * (n_max + 1)
    for k in range(1, n_max + 1):
        L[k] = (1 - t ** k) * spec.pk(k) / k
    return exp_series(TruncatedSeries(L, n_max))


def e_t(spec, t, n_max):
    """Coefficients e^(t)_0..e^(t)_{n_max} as a TruncatedSeries."""
    if n_max > spec.cap:
        raise ValueError(f"n_max {n_max} exceeds spec capacity {spec.cap}")
    t = Fraction(t)
    L = [Fraction(0)] * (n_max + 1)
    for k in range(1, n_max + 1):
        sign = 1 if k % 2 == 1 else -1
        L[k] = sign * (1 - t ** k) * spec.pk(k) / k
    return exp_series(TruncatedSeries(L, n_max))


def h_product_oracle(xs, t, n_max):
    """Independent route: expand prod_i (1 - t x_i z)/(1 - x_i z) directly."""
    t = Fraction(t)
    out = TruncatedSeries.one(n_max)
    for x in xs:
        x = Fraction(x)
        geom = [Fraction(1)]
        for _ in range(n_max):
            geom.append(geom[-1] * x)
        out = out * TruncatedSeries(geom, n_max)
        out = out * TruncatedSeries([1, -t * x], n_max)
    return out


def e_product_oracle(xs, t, n_max):
    """Independent route: expand prod_i (1 + x_i z)/(1 + t x_i z) directly."""
    t = Fraction(t)
    out = TruncatedSeries.one(n_max)
    for x in xs:
        x = Fraction(x)
        geom = [Fraction(1)]
        for _ in range(n_max):
            geom.append(geom[-1] * (-t * x))
        out = out * TruncatedSeries(geom, n_max)
        out = out * TruncatedSeries([1, x], n_max)
    return out


def _jacobi_trudi(coeffs, shape):
    """det( c_{shape_i - i + j} ) over i,j = 1..len(shape); c_m = 0 for m < 0."""
    ell = len(shape)
    if ell == 0:
        return Fraction(1)

    def entry(m):
        if m < 0:
            return Fraction(0)
        return coeffs[m]

    rows = [[entry(shape[i] + j - i) for j in range(ell)] for i in range(ell)]
    return det_fraction(rows)


def t_schur(spec, t, lam):
    """t-Schur value via the h-form Jacobi-Trudi determinant."""
    lam = check_partition(lam)
    n = lam[0] + len(lam) if lam else 0
    if sum(lam) > spec.cap:
        raise ValueError(f"|lambda|={sum(lam)} exceeds spec capacity {spec.cap}")
    h = h_t(spec, t, min(n, spec.cap)) if lam else None
    return _jacobi_trudi(h.coeffs if h else [], lam)


def t_schur_dual(spec, t, lam):
    """t-Schur value via the e-form determinant over the conjugate shape."""
    lam = check_partition(lam)
    conj = conjugate(lam)
    n = conj[0] + len(conj) if conj else 0
    if sum(lam) > spec.cap:
        raise ValueError(f"|lambda|={sum(lam)} exceeds spec capacity {spec.cap}")
    e = e_t(spec, t, min(n, spec.cap)) if conj else None
    return _jacobi_trudi(e.coeffs if e else [], conj)


def schur(spec, lam):
    """Ordinary Schur value s_lambda = t-Schur at t = 0."""
    return t_schur(spec, Fraction(0), lam)


# ---------------------------------------------------------------------------
# Marked-tableau combinatorial oracle
# ---------------------------------------------------------------------------
#
# Letters are encoded as integers: value v marked -> 2v - 1, unmarked -> 2v,
# so the natural integer order realises 1' < 1 < 2' < 2 < ...

def letter_code(value, primed):
    return 2 * value - (1 if primed else 0)


def code_value(code):
    return (code + 1) // 2


def code_primed(code):
    return code % 2 == 1


def _valid_cell(rows, parts, i, j, code):
    """Check (T1) and (T2) for placing `code` at cell (i, j)."""
    if j > 0 and code < rows[i][j - 1]:
        return False
    if i > 0 and code < rows[i - 1][j]:
        return False
    if code_primed(code):
        # at most one marked k' per row
        if code in rows[i][:j]:
            return False
    else:
        # at most one unmarked k per column
        for r in range(i):
            if rows[r][j] == code:
                return False
    return True


def marked_tableaux(lam, n_values):
    """All fillings of `lam` by letters with values 1..n_values obeying (T1)(T2).

    Yields tuples of row tuples of letter codes.  Exponential enumeration,
    guarded for oracle-sized inputs.
    """
    lam = check_partition(lam)
    if sum(lam) > 12 or n_values > 4:
        raise ValueError("marked tableau enumeration is limited to oracle sizes")
    if not lam:
        yield ()
        return
    cells = [(i, j) for i, p in enumerate(lam) for j in range(p)]
    rows = [[0] * p for p in lam]
    codes = range(1, 2 * n_values + 1)

    def fill(idx):
        if idx == len(cells):
            yield tuple(tuple(r) for r in rows)
            return
        i, j = cells[idx]
        for code in codes:
            if _valid_cell(rows, lam, i, j, code):
                rows[i][j] = code
                yield from fill(idx + 1)
                rows[i][j] = 0

    yield from fill(0)


def t_schur_tableau_oracle(xs, t, lam):
    """Sum of (-t)^mark(S) x^S over marked tableaux of shape lam.

    Exhaustive enumeration; must equal the Jacobi-Trudi determinant on the
    same finite variable list.
    """
    xs = [Fraction(x) for x in xs]
    t = Fraction(t)
    total = Fraction(0)
    for filling in marked_tableaux(lam, len(xs)):
        term = Fraction(1)
        marks = 0
        for row in filling:
            for code in row:
                term *= xs[code_value(code) - 1]
                if code_primed(code):
                    marks += 1
        total += (-t) ** marks * term
    return total
