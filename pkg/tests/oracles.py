"""Reference computations for the tests, independent of the package internals."""
import itertools

import sympy

TABLE = {
    (2, 0): [1, 1],
    (2, 1): [1, -1],
    (3, 0): [1, 1, -1],
    (4, 0): [1, 1, 1, -1],
    (4, 1): [1, 1, -1, 1],
    (5, 0): [1, 1, 1, -1, 1],
    (7, 0): [1, 1, 1, -1, -1, 1, -1],
    (11, 0): [1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1],
    (13, 0): [1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1],
}


def loop_xcorr(a, b):
    """{lag: sum_i a[i+k] b[i]} by explicit loops."""
    a, b = list(a), list(b)
    out = {}
    for k in range(-(len(b) - 1), len(a)):
        out[k] = sum(a[i + k] * b[i] for i in range(len(b)) if 0 <= i + k < len(a))
    return out


def loop_nest(codes):
    """Expand nested signs recursively: outer chip times the inner expansion."""
    if len(codes) == 1:
        return list(codes[0])
    inner = loop_nest(codes[1:])
    return [c * x for c in codes[0] for x in inner]


def peak_ratio(seq):
    r = loop_xcorr(seq, seq)
    side = [abs(v) for k, v in r.items() if k != 0]
    return max(side, default=0), len(seq)


def all_nestings(lengths):
    """Every ordering and variant assignment of a factor multiset."""
    for order in set(itertools.permutations(lengths)):
        opts = [[k for k in TABLE if k[0] == n] for n in order]
        for ids in itertools.product(*opts):
            yield ids, loop_nest([TABLE[i] for i in ids])


def symbolic_ccc(M, N):
    """Expand H D_1 H ... D_N H with sympy; entry (s, j) as a coefficient list."""
    w = sympy.Symbol("w")  # w stands for z**-1

    def had(n):
        H = sympy.Matrix([[1]])
        while H.shape[0] < n:
            H = sympy.Matrix(sympy.BlockMatrix([[H, H], [H, -H]]))
        return H

    H = had(M)
    G = H
    for n in range(1, N + 1):
        D = sympy.diag(*[w ** (j * M ** (n - 1)) for j in range(M)])
        G = G * D * H
    L = M**N
    out = []
    for s in range(M):
        row = []
        for j in range(M):
            p = sympy.Poly(sympy.expand(G[s, j]), w)
            coeffs = [int(p.coeff_monomial(w**t)) for t in range(L)]
            row.append(coeffs)
        out.append(row)
    return out


def is_smooth_by_sieve(n):
    """Smoothness via the largest prime factor from sympy."""
    return n == 1 or max(sympy.primefactors(n)) <= 13
