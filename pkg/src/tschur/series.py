"""Truncated power series over exact rationals, and two-sided Laurent windows.

TruncatedSeries is the workhorse of every identity check: coefficients are
`fractions.Fraction`, all ring operations are exact, and two series compare
equal iff every coefficient up to the shared cap is identical.

LaurentWindow holds a finite block of coefficients of a two-sided series
together with a `tail_bound`: an upper bound on the total absolute mass of
all discarded coefficients.  Window products propagate that bound by the
triangle inequality, so a chain of window operations stays certified.
"""

from fractions import Fraction


class TruncatedSeries:
    """Power series c_0 + c_1 z + ... + c_D z^D, exact rational coefficients."""

    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs, cap=None):
        coeffs = [Fraction(c) for c in coeffs]
        if cap is None:
            cap = len(coeffs) - 1
        if cap < 0:
            raise ValueError("cap must be >= 0")
        if len(coeffs) < cap + 1:
            coeffs = coeffs + [Fraction(0)] * (cap + 1 - len(coeffs))
        self.coeffs = coeffs[: cap + 1]
        self.cap = cap

    @classmethod
    def zero(cls, cap):
        return cls([0], cap)

    @classmethod
    def one(cls, cap):
        return cls([1], cap)

    def __getitem__(self, n):
        if n < 0:
            return Fraction(0)
        if n > self.cap:
            raise IndexError(f"degree {n} beyond cap {self.cap}")
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.cap > 5 else ""
        return f"TruncatedSeries([{head}{tail}], cap={self.cap})"

    def _check_cap(self, other):
        if self.cap != other.cap:
            raise ValueError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_cap(other)
            return TruncatedSeries(
                [a + b for a, b in zip(self.coeffs, other.coeffs)], self.cap
            )
        out = list(self.coeffs)
        out[0] += Fraction(other)
        return TruncatedSeries(out, self.cap)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.cap)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_cap(other)
            cap = self.cap
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * (cap + 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j in range(cap + 1 - i):
                    bj = b[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return TruncatedSeries(out, cap)
        c = Fraction(other)
        return TruncatedSeries([c * x for x in self.coeffs], self.cap)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; requires nonzero constant term."""
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        cap = self.cap
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * cap
        for n in range(1, cap + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                ak = self.coeffs[k]
                if ak != 0:
                    s += ak * out[n - k]
            out[n] = -inv0 * s
        return TruncatedSeries(out, cap)

    def shift(self, k):
        """Multiply by z^k (k >= 0), truncating at the cap."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return TruncatedSeries([Fraction(0)] * k + self.coeffs[: self.cap + 1 - k], self.cap)


def exp_series(L):
    """exp of a series with zero constant term.

    Uses the derivative recurrence n g_n = sum_{k=1..n} k L_k g_{n-k}.
    """
    if L.coeffs[0] != 0:
        raise ValueError("exp_series requires zero constant term")
    cap = L.cap
    g = [Fraction(1)] + [Fraction(0)] * cap
    for n in range(1, cap + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            lk = L.coeffs[k]
            if lk != 0:
                s += k * lk * g[n - k]
        g[n] = s / n
    return TruncatedSeries(g, cap)


def log_series(g):
    """log of a series with constant term 1 (inverse of exp_series)."""
    if g.coeffs[0] != 1:
        raise ValueError("log_series requires constant term 1")
    cap = g.cap
    L = [Fraction(0)] * (cap + 1)
    for n in range(1, cap + 1):
        s = n * g.coeffs[n]
        for k in range(1, n):
            if L[k] != 0 and g.coeffs[n - k] != 0:
                s -= k * L[k] * g.coeffs[n - k]
        L[n] = s / n
    return TruncatedSeries(L, cap)


def geometric(c, cap):
    """1/(1 - c z) as a TruncatedSeries."""
    c = Fraction(c)
    out = [Fraction(1)]
    for _ in range(cap):
        out.append(out[-1] * c)
    return TruncatedSeries(out, cap)


def det_ring(rows):
    """Determinant of a square matrix over a commutative ring.

    Division-free expansion with memoization over column subsets; entries need
    only +, -, *.  Suitable for Fraction or TruncatedSeries entries.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")

    memo = {}

    def minor(row, colmask):
        # determinant of the submatrix on rows row..n-1 and columns in colmask
        if row == n:
            return 1
        key = colmask
        if key in memo:
            return memo[key]
        acc = None
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not (colmask & bit):
                continue
            term = rows[row][j] * minor(row + 1, colmask & ~bit)
            if sign < 0:
                term = -term
            acc = term if acc is None else acc + term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def det_fraction(rows):
    """Exact determinant of a Fraction matrix by Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return det


def toeplitz_det(symbol, k):
    """det of the k x k Toeplitz matrix T_k = (phi_{j-i})_{1<=i,j<=k}.

    `symbol` maps an integer offset m to phi_m; entries may be Fractions or
    TruncatedSeries (graded symbols), anything det_ring accepts.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = [[symbol(j - i) for j in range(k)] for i in range(k)]
    return det_ring(rows)


class LaurentWindow:
    """Coefficients c_lo..c_hi of a two-sided series, plus a tail-mass bound.

    `tail_bound` is an upper bound on sum_{n outside [lo,hi]} |c_n| of the
    represented series.  `backend` is 'exact' (Fraction coefficients) or
    'float'.
    """

    __slots__ = ("lo", "hi", "coeffs", "tail_bound", "backend")

    def __init__(self, lo, hi, coeffs, tail_bound=0.0, backend="exact"):
        if hi < lo:
            raise ValueError("hi < lo")
        if len(coeffs) != hi - lo + 1:
            raise ValueError("coefficient count does not match window")
        if backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {backend!r}")
        self.lo = lo
        self.hi = hi
        if backend == "exact":
            self.coeffs = [Fraction(c) for c in coeffs]
        else:
            self.coeffs = [float(c) for c in coeffs]
        self.tail_bound = float(tail_bound)
        self.backend = backend

    @classmethod
    def delta(cls, cap=0, backend="exact"):
        """The series 1 (coefficient 1 at index 0) on window [-cap, cap]."""
        coeffs = [0] * (2 * cap + 1)
        coeffs[cap] = 1
        return cls(-cap, cap, coeffs, 0.0, backend)

    def __getitem__(self, n):
        if self.lo <= n <= self.hi:
            return self.coeffs[n - self.lo]
        zero = Fraction(0) if self.backend == "exact" else 0.0
        return zero

    def indices(self):
        return range(self.lo, self.hi + 1)

    def abs_mass(self):
        """Sum of |c_n| over the retained window (float)."""
        return float(sum(abs(float(c)) for c in self.coeffs))

    def mul(self, other):
        """Full convolution over [lo1+lo2, hi1+hi2], tail bounds combined.

        If a is exact with mass A and tail ta, b likewise, the product's
        discarded mass is at most ta*(B+tb) + tb*A by the triangle inequality
        (every dropped cross term involves at least one tail coefficient).
        """
        if self.backend != other.backend:
            raise ValueError("backend mismatch")
        lo = self.lo + other.lo
        hi = self.hi + other.hi
        zero = Fraction(0) if self.backend == "exact" else 0.0
        out = [zero] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ni = self.lo + i
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[ni + other.lo + j - lo] += a * b
        tail = self.tail_bound * (other.abs_mass() + other.tail_bound) + other.tail_bound * self.abs_mass()
        return LaurentWindow(lo, hi, out, tail, self.backend)

    def truncated(self, lo, hi):
        """Restrict to [lo, hi]; the mass moved outside joins the tail bound."""
        lo = max(lo, self.lo)
        hi = min(hi, self.hi)
        dropped = sum(
            abs(float(c))
            for n, c in zip(self.indices(), self.coeffs)
            if n < lo or n > hi
        )
        return LaurentWindow(
            lo, hi, [self[n] for n in range(lo, hi + 1)], self.tail_bound + dropped, self.backend
        )

    def __repr__(self):
        return (
            f"LaurentWindow([{self.lo},{self.hi}], tail<={self.tail_bound:.3g}, "
            f"backend={self.backend})"
        )


def laurent_mul(a, b):
    """Module-level alias for LaurentWindow.mul."""
    return a.mul(b)
