"""Immutable sparse matrices with exact scalar entries.

Entries are a dict keyed by (row, col). Construction rejects duplicate keys
and drops exact zeros, so stored data is always normalized; everything
downstream may assume no zero entries and no duplicates.
"""


class SparseMatrix:
    __slots__ = ("rows", "cols", "entries", "_cols_cache")

    def __init__(self, rows, cols, entries):
        assert rows >= 0 and cols >= 0
        for (i, j) in entries:
            assert 0 <= i < rows and 0 <= j < cols, "entry (%d,%d) outside %dx%d" % (i, j, rows, cols)
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._cols_cache = None

    @classmethod
    def from_entries(cls, rows, cols, triples, ring):
        """Build from (row, col, value) triples; duplicates are an error."""
        entries = {}
        zero = ring.zero()
        for (i, j, v) in triples:
            if (i, j) in entries:
                raise ValueError("duplicate entry at (%d, %d)" % (i, j))
            v = ring.add(v, zero)  # canonicalize representative
            if not ring.is_zero(v):
                entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_column_dicts(cls, rows, col_dicts, ring):
        entries = {}
        zero = ring.zero()
        for j, col in enumerate(col_dicts):
            for i, v in col.items():
                v = ring.add(v, zero)
                if not ring.is_zero(v):
                    entries[(i, j)] = v
        return cls(rows, len(col_dicts), entries)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n, ring):
        one = ring.one()
        return cls(n, n, {(i, i): one for i in range(n)})

    def entry(self, i, j, ring):
        return self.entries.get((i, j), ring.zero())

    def column_dicts(self):
        """Columns as a list of {row: value} dicts (cached)."""
        if self._cols_cache is None:
            cols = [dict() for _ in range(self.cols)]
            for (i, j), v in self.entries.items():
                cols[j][i] = v
            self._cols_cache = cols
        return self._cols_cache

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def mul(self, other, ring):
        """Matrix product self * other."""
        assert self.cols == other.rows, "shape mismatch %dx%d * %dx%d" % (
            self.rows, self.cols, other.rows, other.cols)
        self_cols = self.column_dicts()
        out = {}
        for j, bcol in enumerate(other.column_dicts()):
            acc = {}
            for k, bv in bcol.items():
                for i, av in self_cols[k].items():
                    s = ring.add(acc.get(i, ring.zero()), ring.mul(av, bv))
                    if ring.is_zero(s):
                        acc.pop(i, None)
                    else:
                        acc[i] = s
            for i, v in acc.items():
                out[(i, j)] = v
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec, ring):
        """Apply to a {col: value} vector, returning a {row: value} dict."""
        acc = {}
        cols = self.column_dicts()
        for j, x in vec.items():
            for i, a in cols[j].items():
                s = ring.add(acc.get(i, ring.zero()), ring.mul(a, x))
                if ring.is_zero(s):
                    acc.pop(i, None)
                else:
                    acc[i] = s
        return acc

    def is_zero(self):
        return not self.entries

    def nnz(self):
        return len(self.entries)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz())
