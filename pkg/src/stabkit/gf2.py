"""GF(2) linear algebra on rows packed as Python integers.

A row is an int whose bit j is column j.  Everything here is exact and
dependency free; matrices are plain lists of ints.
"""


def _lead(v):
    return v.bit_length() - 1


class Eliminator:
    """Incremental echelon basis that remembers how rows were combined.

    ``add(v)`` inserts a row and returns False when it was already in the
    span.  ``express(v)`` returns a bitmask over the inserted rows whose XOR
    equals v, or None.
    """

    def __init__(self):
        self.pivots = {}   # leading bit -> (reduced row, combination mask)
        self.count = 0

    def reduce(self, v):
        combo = 0
        while v:
            b = _lead(v)
            hit = self.pivots.get(b)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def _full_reduce(self, v):
        combo = 0
        for b in sorted(self.pivots, reverse=True):
            if (v >> b) & 1:
                row, c = self.pivots[b]
                v ^= row
                combo ^= c
        return v, combo

    def add(self, v):
        idx = self.count
        self.count += 1
        r, combo = self._full_reduce(v)
        if r == 0:
            return False
        self.pivots[_lead(r)] = (r, combo ^ (1 << idx))
        return True

    def express(self, v):
        r, combo = self._full_reduce(v)
        return combo if r == 0 else None

    def contains(self, v):
        return self._full_reduce(v)[0] == 0

    @property
    def rank(self):
        return len(self.pivots)


def rank(rows):
    e = Eliminator()
    for r in rows:
        e.add(r)
    return e.rank


def in_span(rows, v):
    e = Eliminator()
    for r in rows:
        e.add(r)
    return e.contains(v)


def solve(rows, v):
    """Bitmask c with XOR_{i in c} rows[i] == v, or None if v is not in the span."""
    e = Eliminator()
    for r in rows:
        e.add(r)
    return e.express(v)


def independent(rows):
    return rank(rows) == len(rows)


def basis(rows):
    """An independent subset of ``rows`` spanning the same space (order kept)."""
    e = Eliminator()
    return [r for r in rows if e.add(r)]


def rref(rows, ncols):
    """Reduced row echelon form with pivots scanned from column 0 upwards.

    Returns (reduced_rows, pivot_columns).
    """
    rows = [r for r in rows]
    pivots = []
    i = 0
    for c in range(ncols):
        sel = next((j for j in range(i, len(rows)) if (rows[j] >> c) & 1), None)
        if sel is None:
            continue
        rows[i], rows[sel] = rows[sel], rows[i]
        for j in range(len(rows)):
            if j != i and (rows[j] >> c) & 1:
                rows[j] ^= rows[i]
        pivots.append(c)
        i += 1
        if i == len(rows):
            break
    return [r for r in rows if r], pivots


def nullspace(rows, ncols):
    """Basis of {v : popcount(row & v) even for every row}."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = 1 << f
        for r, p in zip(red, piv):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def swap_halves(v, n):
    mask = (1 << n) - 1
    return ((v & mask) << n) | ((v >> n) & mask)


def symplectic_complement(rows, n):
    """Basis of packed 2n-bit vectors with zero symplectic product against all rows."""
    return nullspace([swap_halves(r, n) for r in rows], 2 * n)


def dot(a, b):
    return bin(a & b).count("1") & 1


def to_matrix(rows, ncols):
    """List of 0/1 lists (column 0 first)."""
    return [[(r >> c) & 1 for c in range(ncols)] for r in rows]


def from_matrix(mat):
    return [sum(1 << c for c, b in enumerate(row) if b) for row in mat]


def span_elements(rows):
    """All 2^len(rows) XOR combinations (rows assumed independent)."""
    out = [0]
    for r in rows:
        out += [v ^ r for v in out]
    return out


def min_weight_codeword(gen_rows):
    """Minimum Hamming weight of a nonzero codeword; exhaustive (small k only)."""
    best = None
    for v in span_elements(basis(gen_rows))[1:]:
        w = bin(v).count("1")
        if best is None or w < best:
            best = w
    return best
