"""Row insertion over the marked alphabet 1' < 1 < 2' < 2 < ...

Letters are integer codes: value v marked -> 2v - 1, unmarked -> 2v, so the
natural integer order realises the alphabet order with a single comparator.

Bumping rules: an unmarked letter replaces the leftmost strictly larger
entry; a marked letter replaces the leftmost entry that is >= it (weak).
The weak rule is what keeps at most one marked k' per row and at most one
unmarked k per column in the insertion tableau.

Matrix-to-biword encoding.  A cell (i, j) holding an unmarked magnitude k
contributes k pairs (j, i).  For a marked cell the shipped default encoding
('single-mark') contributes one pair (j, i') followed by k-1 pairs (j, i),
which conserves the number of marks and makes the recording tableau
semistandard; the literal alternative ('all-marks', k pairs (j, i')) is kept
for comparison but fails both properties on e.g. a 1x1 matrix holding 2'.
The tie order within equal first-row entries is configurable the same way;
the default sorts by increasing letter.  See tests for the exhaustive gate
that fixes these defaults.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .symfunc import code_primed, code_value, letter_code

DEFAULT_ENCODING = "single-mark"
DEFAULT_TIE_ORDER = "alpha-increasing"


class NotInImage(ValueError):
    """Raised when a (S, U) pair is not produced by any matrix."""


def format_letter(code):
    v = code_value(code)
    return f"{v}'" if code_primed(code) else str(v)


def parse_letter(text):
    text = text.strip()
    if text.endswith("'"):
        return letter_code(int(text[:-1]), True)
    return letter_code(int(text), False)


@dataclass(frozen=True)
class AMatrix:
    """Matrix over the marked alphabet plus zero.

    entries[i][j] = (magnitude, primed); primed requires magnitude > 0.
    """

    entries: tuple

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for mag, primed in row:
                if mag < 0:
                    raise ValueError("magnitudes must be >= 0")
                if primed and mag == 0:
                    raise ValueError("a zero entry cannot be marked")

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple((int(m), bool(p)) for m, p in row) for row in rows))

    @classmethod
    def from_json(cls, obj):
        """Wire format: array of rows; each entry {"v": int, "p": bool}."""
        rows = []
        for row in obj:
            rows.append([(cell["v"], cell.get("p", False)) for cell in row])
        return cls.from_rows(rows)

    def to_json(self):
        return [
            [{"v": mag, "p": primed} for mag, primed in row] for row in self.entries
        ]

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0])

    def mark_count(self):
        return sum(1 for row in self.entries for _, primed in row if primed)

    def row_sums(self):
        return tuple(sum(mag for mag, _ in row) for row in self.entries)

    def col_sums(self):
        m, n = self.shape
        return tuple(sum(self.entries[i][j][0] for i in range(m)) for j in range(n))


def _tie_key(tie_order):
    if tie_order == "alpha-increasing":
        return lambda code: code
    if tie_order == "marked-decreasing":
        # unmarked ascending first, then marked letters in decreasing value
        return lambda code: (0, code) if not code_primed(code) else (1, -code)
    raise ValueError(f"unknown tie order {tie_order!r}")


def biword(matrix, encoding=DEFAULT_ENCODING, tie_order=DEFAULT_TIE_ORDER):
    """Pairs (beta, letter-code), sorted by beta with the chosen tie order."""
    if encoding not in ("single-mark", "all-marks"):
        raise ValueError(f"unknown encoding {encoding!r}")
    key = _tie_key(tie_order)
    pairs = []
    for i, row in enumerate(matrix.entries, start=1):
        for j, (mag, primed) in enumerate(row, start=1):
            if mag == 0:
                continue
            if not primed:
                pairs.extend((j, letter_code(i, False)) for _ in range(mag))
            elif encoding == "single-mark":
                pairs.append((j, letter_code(i, True)))
                pairs.extend((j, letter_code(i, False)) for _ in range(mag - 1))
            else:
                pairs.extend((j, letter_code(i, True)) for _ in range(mag))
    pairs.sort(key=lambda bp: (bp[0], key(bp[1])))
    return pairs


def _bump_position(row, code):
    """Index of the entry the letter bumps, or None to append."""
    if code_primed(code):
        pos = bisect_left(row, code)  # leftmost entry >= code
    else:
        pos = bisect_right(row, code)  # leftmost entry > code
    return pos if pos < len(row) else None


def row_insert(rows, code):
    """Insert a letter code into a tableau (list of lists, mutated).

    Returns the (row, col) of the new cell, 0-based.
    """
    r = 0
    while True:
        if r == len(rows):
            rows.append([code])
            return r, 0
        pos = _bump_position(rows[r], code)
        if pos is None:
            rows[r].append(code)
            return r, len(rows[r]) - 1
        rows[r][pos], code = code, rows[r][pos]
        r += 1


def insert(tableau, code):
    """Pure insertion: returns (new tableau, new cell) without mutating input."""
    rows = [list(r) for r in tableau]
    cell = row_insert(rows, code)
    return tuple(tuple(r) for r in rows), cell


def rsk(matrix, encoding=DEFAULT_ENCODING, tie_order=DEFAULT_TIE_ORDER):
    """Insert the biword of `matrix`; returns (S, U) as tuples of row tuples.

    S holds letter codes, U holds the recorded first-row values.
    """
    s_rows, u_rows = [], []
    for beta, code in biword(matrix, encoding, tie_order):
        r, c = row_insert(s_rows, code)
        if r == len(u_rows):
            u_rows.append([])
        assert len(u_rows[r]) == c
        u_rows[r].append(beta)
    return tuple(tuple(r) for r in s_rows), tuple(tuple(r) for r in u_rows)


def shape_of(tableau):
    return tuple(len(r) for r in tableau)


def is_marked_tableau(rows):
    """(T1): weakly increasing rows and columns; (T2): one k' per row, one
    unmarked k per column."""
    for r, row in enumerate(rows):
        for c, code in enumerate(row):
            if c > 0 and row[c - 1] > code:
                return False
            if r > 0 and (len(rows[r - 1]) <= c or rows[r - 1][c] > code):
                return False
        marked = [x for x in row if code_primed(x)]
        if len(marked) != len(set(marked)):
            return False
    shape = shape_of(rows)
    if list(shape) != sorted(shape, reverse=True):
        return False
    ncols = shape[0] if shape else 0
    for c in range(ncols):
        col = [row[c] for row in rows if len(row) > c]
        unmarked = [x for x in col if not code_primed(x)]
        if len(unmarked) != len(set(unmarked)):
            return False
    return True


def is_semistandard(rows):
    """Rows weakly increasing, columns strictly increasing."""
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if c > 0 and row[c - 1] > v:
                return False
            if r > 0 and (len(rows[r - 1]) <= c or rows[r - 1][c] >= v):
                return False
    shape = shape_of(rows)
    return list(shape) == sorted(shape, reverse=True)


def _reverse_bump(row, carry):
    """Position in `row` whose entry originally bumped `carry`, or None."""
    if code_primed(carry):
        pos = bisect_right(row, carry) - 1  # rightmost entry <= carry
    else:
        pos = bisect_left(row, carry) - 1  # rightmost entry < carry
    return pos if pos >= 0 else None


def inverse_rsk(s_tab, u_tab, m=None, n=None, encoding=DEFAULT_ENCODING,
                tie_order=DEFAULT_TIE_ORDER):
    """Invert the correspondence; raises NotInImage for pairs no matrix maps to.

    m, n default to the largest letter value in S and largest entry in U.
    """
    s_rows = [list(r) for r in s_tab]
    u_rows = [list(r) for r in u_tab]
    if shape_of(s_rows) != shape_of(u_rows):
        raise NotInImage("shapes differ")
    if not is_marked_tableau(s_rows):
        raise NotInImage("S is not a marked tableau")
    if not is_semistandard(u_rows):
        raise NotInImage("U is not semistandard")

    cells = [(u_rows[r][c], c, r) for r in range(len(u_rows)) for c in range(len(u_rows[r]))]
    # reverse chronological order: beta descending, then column descending
    cells.sort(key=lambda t: (-t[0], -t[1]))

    pairs = []
    for beta, c, r in cells:
        if c != len(s_rows[r]) - 1:
            raise NotInImage("cell to remove is not at the end of its row")
        carry = s_rows[r].pop()
        if not s_rows[r]:
            s_rows.pop()
        for rr in range(r - 1, -1, -1):
            pos = _reverse_bump(s_rows[rr], carry)
            if pos is None:
                raise NotInImage("reverse bumping found no target")
            s_rows[rr][pos], carry = carry, s_rows[rr][pos]
        pairs.append((beta, carry))
    pairs.reverse()

    if m is None:
        m = max((code_value(code) for _, code in pairs), default=1)
    if n is None:
        n = max((beta for beta, _ in pairs), default=1)

    counts = {}
    for beta, code in pairs:
        if beta > n or code_value(code) > m:
            raise NotInImage("letter outside requested matrix dimensions")
        key = (code_value(code), beta)
        mag, primed = counts.get(key, (0, 0))
        counts[key] = (mag + 1, primed + (1 if code_primed(code) else 0))

    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, n + 1):
            mag, primes = counts.get((i, j), (0, 0))
            if encoding == "single-mark":
                if primes > 1:
                    raise NotInImage("more than one marked copy for a cell")
                row.append((mag, primes == 1))
            else:
                if 0 < primes < mag:
                    raise NotInImage("mixed marks within a cell")
                row.append((mag, primes > 0))
        rows.append(row)
    matrix = AMatrix.from_rows(rows)

    if rsk(matrix, encoding, tie_order) != (tuple(map(tuple, s_tab)), tuple(map(tuple, u_tab))):
        raise NotInImage("candidate matrix does not reproduce the pair")
    return matrix


def lis_marked(word):
    """Longest weakly increasing subsequence using at most one k' per value.

    Dynamic programming over ending positions; independent of the insertion
    code paths.
    """
    best = []
    out = 0
    for i, code in enumerate(word):
        primed = code_primed(code)
        f = 1
        for j in range(i):
            cj = word[j]
            if cj > code:
                continue
            if primed and cj == code:
                continue  # a second copy of the same marked letter
            if best[j] + 1 > f:
                f = best[j] + 1
        best.append(f)
        out = max(out, f)
    return out


def _ending_lengths(word):
    """Max length of a valid increasing subsequence ending at each position."""
    best = []
    for i, code in enumerate(word):
        primed = code_primed(code)
        f = 1
        for j in range(i):
            cj = word[j]
            if cj > code or (primed and cj == code):
                continue
            f = max(f, best[j] + 1)
        best.append(f)
    return best


def column_of_new_cell_check(word):
    """Verify the first-row-landing column equals the ending-subsequence length.

    For every prefix, the column (1-based) where the letter lands in row one
    must match the DP length of the longest valid increasing subsequence
    ending at that letter.
    """
    lengths = _ending_lengths(word)
    row = []
    for i, code in enumerate(word):
        pos = _bump_position(row, code)
        if pos is None:
            row.append(code)
            col = len(row)
        else:
            row[pos] = code
            col = pos + 1
        if col != lengths[i]:
            return False
    return True


def first_row_length(word):
    """lambda_1 of the insertion tableau, tracking only the first row."""
    row = []
    for code in word:
        pos = _bump_position(row, code)
        if pos is None:
            row.append(code)
        else:
            row[pos] = code
    return len(row)
