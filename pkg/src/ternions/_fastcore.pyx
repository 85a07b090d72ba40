# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: exact dense linear algebra over GF(q).

Mirror of _pycore.Kernel.  Matrices stay tiny (at most MAX_DIM rows and
columns before augmentation), so everything runs on fixed C buffers with
byte-sized element codes.  Outputs are canonical and must agree bit for
bit with the pure-Python backend.
"""

MAX_DIM = 16

DEF MAXR = 32
DEF MAXC = 32

cdef class Kernel:
    cdef public int q
    cdef bytes _add_b, _mul_b, _neg_b, _inv_b
    cdef const unsigned char* add
    cdef const unsigned char* mul
    cdef const unsigned char* neg
    cdef const unsigned char* inv

    def __init__(self, q, add, mul, neg, inv):
        if len(add) != q * q or len(mul) != q * q:
            raise ValueError("add/mul tables must have length q*q")
        if len(neg) != q or len(inv) != q:
            raise ValueError("neg/inv tables must have length q")
        if q > 256:
            raise ValueError("element codes must fit one byte")
        self.q = q
        self._add_b = bytes(add)
        self._mul_b = bytes(mul)
        self._neg_b = bytes(neg)
        self._inv_b = bytes(inv)
        self.add = self._add_b
        self.mul = self._mul_b
        self.neg = self._neg_b
        self.inv = self._inv_b

    # -- buffer helpers ----------------------------------------------------

    cdef int _load(self, object rows, unsigned char[MAXR][MAXC] m, int* ncols) except -1:
        cdef int nr = len(rows)
        cdef int nc = 0
        cdef int i, j
        if nr == 0:
            ncols[0] = 0
            return 0
        nc = len(rows[0])
        if nr > MAXR or nc > MAXC:
            raise ValueError("matrix exceeds kernel buffer size")
        for i in range(nr):
            row = rows[i]
            if len(row) != nc:
                raise ValueError("ragged matrix")
            for j in range(nc):
                m[i][j] = <unsigned char> row[j]
        ncols[0] = nc
        return nr

    cdef int _eliminate(self, unsigned char[MAXR][MAXC] m, int nrows, int ncols):
        cdef int q = self.q
        cdef const unsigned char* add = self.add
        cdef const unsigned char* mul = self.mul
        cdef const unsigned char* neg = self.neg
        cdef const unsigned char* inv = self.inv
        cdef int r = 0, c, i, j, pr
        cdef unsigned char piv, f, v
        cdef unsigned char tmp[MAXC]
        for c in range(ncols):
            pr = -1
            for i in range(r, nrows):
                if m[i][c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    tmp[j] = m[r][j]
                    m[r][j] = m[pr][j]
                    m[pr][j] = tmp[j]
            piv = m[r][c]
            if piv != 1:
                f = inv[piv]
                for j in range(c, ncols):
                    m[r][j] = mul[f * q + m[r][j]]
            for i in range(nrows):
                if i == r:
                    continue
                v = m[i][c]
                if v:
                    f = neg[v]
                    for j in range(c, ncols):
                        m[i][j] = add[m[i][j] * q + mul[f * q + m[r][j]]]
            r += 1
            if r == nrows:
                break
        return r

    cdef object _rows_out(self, unsigned char[MAXR][MAXC] m, int nrows, int ncols):
        cdef int i, j
        out = []
        for i in range(nrows):
            out.append(tuple([m[i][j] for j in range(ncols)]))
        return tuple(out)

    # -- public operations ---------------------------------------------------

    def rref(self, rows):
        """Canonical reduced row echelon form, zero rows dropped."""
        cdef unsigned char m[MAXR][MAXC]
        cdef int nc = 0
        cdef int nr = self._load(rows, m, &nc)
        if nr == 0:
            return ()
        cdef int rank = self._eliminate(m, nr, nc)
        return self._rows_out(m, rank, nc)

    def rank(self, rows):
        cdef unsigned char m[MAXR][MAXC]
        cdef int nc = 0
        cdef int nr = self._load(rows, m, &nc)
        if nr == 0:
            return 0
        return self._eliminate(m, nr, nc)

    def stack_rank(self, rows_a, rows_b):
        """Rank of the two row sets stacked; the hot path of the scans."""
        cdef unsigned char m[MAXR][MAXC]
        cdef int i, j
        cdef int na = len(rows_a), nb = len(rows_b)
        if na == 0:
            return self.rank(rows_b)
        if nb == 0:
            return self.rank(rows_a)
        cdef int nc = len(rows_a[0])
        if na + nb > MAXR or nc > MAXC:
            raise ValueError("matrix exceeds kernel buffer size")
        for i in range(na):
            row = rows_a[i]
            for j in range(nc):
                m[i][j] = <unsigned char> row[j]
        for i in range(nb):
            row = rows_b[i]
            for j in range(nc):
                m[na + i][j] = <unsigned char> row[j]
        return self._eliminate(m, na + nb, nc)

    def meet(self, rows_a, rows_b, ncols):
        """Canonical basis of the intersection of two row spaces (Zassenhaus)."""
        cdef unsigned char m[MAXR][MAXC]
        cdef int i, j, z
        cdef int na = len(rows_a), nb = len(rows_b)
        cdef int nc = ncols
        if na == 0 or nb == 0:
            return ()
        if na + nb > MAXR or 2 * nc > MAXC:
            raise ValueError("matrix exceeds kernel buffer size")
        for i in range(na):
            row = rows_a[i]
            for j in range(nc):
                m[i][j] = <unsigned char> row[j]
                m[i][nc + j] = m[i][j]
        for i in range(nb):
            row = rows_b[i]
            for j in range(nc):
                m[na + i][j] = <unsigned char> row[j]
                m[na + i][nc + j] = 0
        cdef int rank = self._eliminate(m, na + nb, 2 * nc)
        out = []
        for i in range(rank):
            z = 1
            for j in range(nc):
                if m[i][j]:
                    z = 0
                    break
            if z:
                out.append(tuple([m[i][nc + j] for j in range(nc)]))
        return tuple(out)

    def matmul(self, rows_a, rows_b):
        """Product of two coded matrices (rows_a: m x k, rows_b: k x n)."""
        cdef int q = self.q
        cdef const unsigned char* add = self.add
        cdef const unsigned char* mul = self.mul
        cdef unsigned char b[MAXR][MAXC]
        cdef unsigned char acc[MAXC]
        cdef int nb = 0
        cdef int k = len(rows_b)
        cdef int i, j, t
        cdef unsigned char v
        if len(rows_a) == 0:
            return ()
        if len(rows_a[0]) != k:
            raise ValueError("inner dimensions differ")
        self._load(rows_b, b, &nb)
        out = []
        for ra in rows_a:
            for j in range(nb):
                acc[j] = 0
            for t in range(k):
                v = <unsigned char> ra[t]
                if v:
                    for j in range(nb):
                        if b[t][j]:
                            acc[j] = add[acc[j] * q + mul[v * q + b[t][j]]]
            out.append(tuple([acc[j] for j in range(nb)]))
        return tuple(out)

    def matinv(self, rows):
        """Inverse of a square coded matrix, or None when singular."""
        cdef unsigned char m[MAXR][MAXC]
        cdef int n = len(rows)
        cdef int i, j
        if n == 0:
            return ()
        if len(rows[0]) != n:
            raise ValueError("matrix is not square")
        if n > MAXR or 2 * n > MAXC:
            raise ValueError("matrix exceeds kernel buffer size")
        for i in range(n):
            row = rows[i]
            for j in range(n):
                m[i][j] = <unsigned char> row[j]
                m[i][n + j] = 0
            m[i][n + i] = 1
        self._eliminate(m, n, 2 * n)
        for i in range(n):
            if m[i][i] != 1:
                return None
        out = []
        for i in range(n):
            out.append(tuple([m[i][n + j] for j in range(n)]))
        return tuple(out)

    def det(self, rows):
        """Determinant of a square coded matrix."""
        cdef unsigned char m[MAXR][MAXC]
        cdef int q = self.q
        cdef const unsigned char* add = self.add
        cdef const unsigned char* mul = self.mul
        cdef const unsigned char* neg = self.neg
        cdef const unsigned char* inv = self.inv
        cdef int n = len(rows)
        cdef int nc = 0
        cdef int c, i, j, pr
        cdef unsigned char d = 1, piv, fpiv, f, tmp
        if n == 0:
            return 1
        if len(rows[0]) != n:
            raise ValueError("matrix is not square")
        self._load(rows, m, &nc)
        for c in range(n):
            pr = -1
            for i in range(c, n):
                if m[i][c]:
                    pr = i
                    break
            if pr < 0:
                return 0
            if pr != c:
                for j in range(n):
                    tmp = m[c][j]
                    m[c][j] = m[pr][j]
                    m[pr][j] = tmp
                d = mul[d * q + neg[1]]
            piv = m[c][c]
            d = mul[d * q + piv]
            fpiv = inv[piv]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = mul[neg[m[i][c]] * q + fpiv]
                    for j in range(c, n):
                        m[i][j] = add[m[i][j] * q + mul[f * q + m[c][j]]]
        return d

    def nullspace(self, rows, ncols):
        """Canonical basis of {w : rows . w^T = 0} in F^ncols."""
        cdef unsigned char m[MAXR][MAXC]
        cdef unsigned char vecs[MAXC][MAXC]
        cdef const unsigned char* neg = self.neg
        cdef int nc = 0
        cdef int n = ncols
        cdef int i, j, r, nv
        cdef int pivots[MAXC]
        cdef unsigned char is_pivot[MAXC]
        cdef int nr = self._load(rows, m, &nc)
        cdef int rank = 0
        if nr:
            rank = self._eliminate(m, nr, nc)
        for j in range(n):
            is_pivot[j] = 0
        for i in range(rank):
            for j in range(nc):
                if m[i][j]:
                    pivots[i] = j
                    is_pivot[j] = 1
                    break
        nv = 0
        for j in range(n):
            if is_pivot[j]:
                continue
            for i in range(n):
                vecs[nv][i] = 0
            vecs[nv][j] = 1
            for i in range(rank):
                vecs[nv][pivots[i]] = neg[m[i][j]]
            nv += 1
        if nv == 0:
            return ()
        if nv > MAXR or n > MAXC:
            raise ValueError("matrix exceeds kernel buffer size")
        cdef unsigned char w[MAXR][MAXC]
        for i in range(nv):
            for j in range(n):
                w[i][j] = vecs[i][j]
        r = self._eliminate(w, nv, n)
        return self._rows_out(w, r, n)

    def vec_apply(self, vec, rows_m, sigma=None):
        """Image of one row vector: apply sigma entrywise, then right-multiply."""
        cdef int q = self.q
        cdef const unsigned char* add = self.add
        cdef const unsigned char* mul = self.mul
        cdef unsigned char b[MAXR][MAXC]
        cdef unsigned char acc[MAXC]
        cdef unsigned char v
        cdef int nb = 0, t, j
        cdef int k = len(vec)
        self._load(rows_m, b, &nb)
        for j in range(nb):
            acc[j] = 0
        if sigma is None:
            for t in range(k):
                v = <unsigned char> vec[t]
                if v:
                    for j in range(nb):
                        if b[t][j]:
                            acc[j] = add[acc[j] * q + mul[v * q + b[t][j]]]
        else:
            for t in range(k):
                v = <unsigned char> sigma[vec[t]]
                if v:
                    for j in range(nb):
                        if b[t][j]:
                            acc[j] = add[acc[j] * q + mul[v * q + b[t][j]]]
        return tuple([acc[j] for j in range(nb)])

    def apply_rows(self, rows, rows_m, sigma=None):
        """Canonical image of a row space under (sigma entrywise, then . M)."""
        imgs = [self.vec_apply(r, rows_m, sigma) for r in rows]
        return self.rref(imgs)
