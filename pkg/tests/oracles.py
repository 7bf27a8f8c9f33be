"""Independent oracles used to freeze expected values.

The bar-complex Tor computation shares no code path with the resolution
engine: it never builds free modules, minimal generators, or kernels of
differentials between them.
"""
from itertools import product

from golodlab.linalg import SpanBuilder, nullspace, rank


def _m_basis(A):
    """[(degree, index)] enumeration of a basis of the maximal ideal."""
    out = []
    for d in range(1, A.dcap + 1):
        for i in range(A.dim(d)):
            out.append((d, i))
    return out


def bar_tor_dims(A, M, n_max, d_max):
    """dim Tor_n^A(k, M) per (n, internal degree) via the reduced bar complex.

    Bar_n = m^{(x)n} (x) M with the standard face maps; everything degreewise.
    """
    F = A.field

    def words(n, d):
        """Basis of (m^{(x)n} (x) M) in internal degree d: tuples of (deg, idx) + module pair."""
        if n == 0:
            return [((), (d, j)) for j in range(M.dim(d))]
        out = []

        def rec(slots, remaining, prefix):
            if slots == 0:
                for j in range(M.dim(remaining)):
                    out.append((tuple(prefix), (remaining, j)))
                return
            for e in range(1, remaining + 1):
                if e > A.dcap:
                    break
                for i in range(A.dim(e)):
                    rec(slots - 1, remaining - e, prefix + [(e, i)])

        rec(n, d, [])
        return out

    def diff_matrix(n, d):
        """Matrix of the bar differential Bar_n -> Bar_{n-1} in degree d."""
        src = words(n, d)
        trg = words(n - 1, d)
        index = {w: i for i, w in enumerate(trg)}
        mat = [[F.zero()] * len(src) for _ in range(len(trg))]
        for c, (word, (md, mj)) in enumerate(src):
            # internal multiplications
            for i in range(n - 1):
                (e1, i1), (e2, i2) = word[i], word[i + 1]
                prod = A.mul_basis(e1, e2, i1, i2)
                sign = F.of(-1 if (i + 1) % 2 else 1)
                for t, cv in enumerate(prod):
                    if F.is_zero(cv):
                        continue
                    w2 = (word[:i] + ((e1 + e2, t),) + word[i + 2:], (md, mj))
                    r = index[w2]
                    mat[r][c] = F.add(mat[r][c], F.mul(sign, cv))
            # final action on the module
            (e, i1) = word[-1]
            act = M.act_basis(e, md, i1, mj)
            sign = F.of(-1 if n % 2 else 1)
            for t, cv in enumerate(act):
                if F.is_zero(cv):
                    continue
                w2 = (word[:-1], (md + e, t))
                r = index[w2]
                mat[r][c] = F.add(mat[r][c], F.mul(sign, cv))
        return mat, len(src), len(trg)

    dims = {}
    for d in range(d_max + 1):
        mats = {}
        sizes = {}
        for n in range(n_max + 2):
            mats[n], sizes[n], _ = diff_matrix(n, d) if n >= 1 else ([], len(words(0, d)), 0)
        for n in range(n_max + 1):
            if sizes[n] == 0:
                continue
            if n == 0:
                kernel_dim = sizes[0]
            else:
                kernel_dim = len(nullspace(F, mats[n], sizes[n]))
            image_dim = rank(F, mats[n + 1]) if (sizes[n + 1] and mats[n + 1]) else 0
            h = kernel_dim - image_dim
            if h:
                dims[(n, d)] = h
    return dims


def bar_poincare(A, M, n_max, d_max):
    dims = bar_tor_dims(A, M, n_max, d_max)
    return [sum(h for (n, _), h in dims.items() if n == i) for i in range(n_max + 1)]


def naive_series_quotient(numer, denom, length):
    """Plain long division of integer coefficient lists (denom[0] == 1)."""
    out = []
    for i in range(length):
        acc = numer[i] if i < len(numer) else 0
        for j in range(1, i + 1):
            if j < len(denom):
                acc -= denom[j] * out[i - j]
        out.append(acc)
    return out
