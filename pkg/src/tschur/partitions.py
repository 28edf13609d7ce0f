"""Integer partitions, Young-diagram bookkeeping, and half-integer point sets.

Partitions are plain tuples of positive integers, weakly decreasing.  The
half-integer particle configuration of a partition is stored in integer form:
an integer d stands for the point d + 1/2.  Every public function in this
package follows that single convention.
"""

from math import factorial


def check_partition(parts):
    """Validate that `parts` is weakly decreasing with positive entries."""
    parts = tuple(parts)
    for p in parts:
        if not isinstance(p, int) or p < 1:
            raise ValueError(f"partition parts must be positive integers, got {parts}")
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"partition parts must be weakly decreasing, got {parts}")
    return parts


def weight(parts):
    return sum(parts)


def conjugate(parts):
    """Transpose of the Young diagram: lambda'_j = #{i : lambda_i >= j}."""
    parts = tuple(parts)
    if not parts:
        return ()
    cols = [0] * parts[0]
    for p in parts:
        for j in range(p):
            cols[j] += 1
    return tuple(cols)


def partitions(n):
    """All partitions of exactly n, in reverse lexicographic order.

    Reverse lex on the part tuples: (n) first, (1,...,1) last.  This is the
    canonical enumeration order used by every brute-force sum in the package.
    """
    if n < 0:
        raise ValueError("n must be >= 0")

    def gen(remaining, maxpart, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        for p in range(min(remaining, maxpart), 0, -1):
            prefix.append(p)
            yield from gen(remaining - p, p, prefix)
            prefix.pop()

    yield from gen(n, n, [])


def partitions_up_to(n):
    """All partitions of weight <= n, ordered by weight then reverse lex."""
    for k in range(n + 1):
        yield from partitions(k)


def partition_count(n):
    """p(n) via the Euler pentagonal-number recurrence (independent of the
    enumerator, used to cross-check it)."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def hooks(parts):
    """Hook lengths of every cell, row by row."""
    parts = tuple(parts)
    conj = conjugate(parts)
    out = []
    for i, row in enumerate(parts):
        out.append([row - j + conj[j] - i - 1 for j in range(row)])
    return out


def syt_count(parts):
    """Number of standard Young tableaux f^lambda, by the hook-length formula.

    All-integer arithmetic; the hook product divides n! exactly.
    """
    parts = check_partition(parts)
    n = sum(parts)
    denom = 1
    for row in hooks(parts):
        for h in row:
            denom *= h
    q, rem = divmod(factorial(n), denom)
    if rem:
        raise ArithmeticError("hook product does not divide n!")
    return q


def standard_tableaux(parts):
    """Exhaustively enumerate standard Young tableaux of the given shape.

    Entries 1..n, rows and columns strictly increasing.  Exponential; intended
    for |lambda| <= 10 oracle work.
    """
    parts = check_partition(parts)
    n = sum(parts)
    if n == 0:
        yield ()
        return
    rows = [[0] * p for p in parts]
    fill = [0] * len(parts)  # number of filled cells per row

    def place(v):
        if v > n:
            yield tuple(tuple(r) for r in rows)
            return
        for i, p in enumerate(parts):
            j = fill[i]
            if j >= p:
                continue
            if i > 0 and fill[i - 1] <= j:
                continue
            rows[i][j] = v
            fill[i] += 1
            yield from place(v + 1)
            fill[i] -= 1

    yield from place(1)


def frobenius_points(parts, depth):
    """First `depth` points of the configuration, in integer form.

    Returns the tuple (lambda_1 - 1, lambda_2 - 2, ..., lambda_depth - depth)
    with lambda_i = 0 past the length; entries are strictly decreasing.  Each
    integer d stands for the half-integer point d + 1/2.
    """
    parts = tuple(parts)
    if depth < len(parts):
        raise ValueError(f"depth {depth} < partition length {len(parts)}")
    return tuple((parts[i] if i < len(parts) else 0) - (i + 1) for i in range(depth))


def contains_points(parts, points):
    """Whether every integer d in `points` is lambda_i - i for some i >= 1.

    Past the length of the partition the values are -i, so any d <= -len-1 is
    always present.
    """
    parts = tuple(parts)
    ell = len(parts)
    explicit = {parts[i] - (i + 1) for i in range(ell)}
    return all(d in explicit or d <= -ell - 1 for d in points)


def to_json(parts):
    """Partitions serialize as JSON arrays of parts; the empty partition as []."""
    return list(parts)


def from_json(obj):
    if not isinstance(obj, list):
        raise ValueError("partition JSON must be an array of parts")
    return check_partition(obj)
