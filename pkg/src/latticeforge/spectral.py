"""Directional adjacency operators and the cubical Ramanujan certificate.

A_v sums neighbour values with edge multiplicity; its trivial eigenvalues
are +-(q_v+1), the minus sign occurring once per bipartite component of the
v-subgraph.  The complex is cubical Ramanujan when every nontrivial
eigenvalue satisfies |lambda| <= 2 sqrt(q_v).

Eigenvalues come from LAPACK's symmetric solver (Householder reduction +
implicit-shift iteration); for small orders an independent oracle computes
the characteristic polynomial exactly by integer Faddeev-LeVerrier and
isolates its real roots symbolically.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonSymmetric, UnknownDirection
from .quotient import CayleyComplex

_DENSE_CAP = 8192


def adjacency(C: CayleyComplex, label: str) -> np.ndarray:
    """Dense symmetric integer adjacency matrix of the v-direction subgraph."""
    if label not in C.edges:
        raise UnknownDirection(f"no direction {label!r}")
    n = C.n_vertices
    if n > _DENSE_CAP:
        raise ValueError(f"{n} vertices exceed the dense cap {_DENSE_CAP}")
    A = np.zeros((n, n), dtype=np.int64)
    for (u, w), mult in C.edges[label].items():
        A[u, w] = mult
    if not np.array_equal(A, A.T):
        raise NonSymmetric(f"direction {label} adjacency is not symmetric")
    return A


def directional_matrices(C: CayleyComplex):
    return [(label, qv, adjacency(C, label)) for label, qv in C.directions]


def matrices_from_bin(path: str):
    from .quotient import read_cayley_bin
    n, blocks = read_cayley_bin(path)
    if n > _DENSE_CAP:
        raise ValueError(f"{n} vertices exceed the dense cap {_DENSE_CAP}")
    out = []
    for label, qv, indptr, indices, data in blocks:
        A = np.zeros((n, n), dtype=np.int64)
        for u in range(n):
            for pos in range(indptr[u], indptr[u + 1]):
                A[u, indices[pos]] = data[pos]
        if not np.array_equal(A, A.T):
            raise NonSymmetric(f"direction {label} adjacency is not symmetric")
        out.append((label, qv, A))
    return out


def spectrum(M: np.ndarray) -> list:
    """All eigenvalues of a symmetric integer matrix, descending."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or not np.array_equal(M, M.T):
        raise NonSymmetric("matrix is not symmetric")
    vals = np.linalg.eigvalsh(M.astype(np.float64))
    return [float(v) for v in vals[::-1]]


def exact_int_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer matrix product, exact.

    Routed through float64 BLAS when every partial sum stays below 2^53
    (float64 adds of such integers are exact), else the int64 path.
    """
    n = A.shape[1]
    bound = n * int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0))
    if bound < 2**53:
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return np.rint(prod).astype(np.int64)
    return A.astype(np.int64) @ B.astype(np.int64)


def charpoly_int(M) -> list:
    """Exact characteristic polynomial of an integer matrix, coefficients
    [1, c1, ..., cn] for x^n + c1 x^(n-1) + ... + cn (Faddeev-LeVerrier)."""
    A = [[Fraction(int(x)) for x in row] for row in M]
    n = len(A)

    def mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def add_scalar(X, s):
        return [[X[i][j] + (s if i == j else 0) for j in range(n)] for i in range(n)]

    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    ck = Fraction(1)
    for k in range(1, n + 1):
        Mk = mul(A, add_scalar(Mk, ck)) if k > 1 else [row[:] for row in A]
        ck = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


def charpoly_roots(M) -> list:
    """Real roots (with multiplicity, descending) of the exact characteristic
    polynomial, isolated symbolically; the oracle for the dense eigensolver."""
    import sympy

    coeffs = charpoly_int(M)
    x = sympy.Symbol("x")
    poly = sympy.Poly(coeffs, x)
    roots = [float(r.evalf(30)) for r in sympy.real_roots(poly)]
    return sorted(roots, reverse=True)


# ---------------------------------------------------------------------------
# structure of the one-direction subgraph

def _v_components(A: np.ndarray):
    """Connected components of the v-subgraph and a bipartiteness flag each.

    Loops (diagonal entries) and any odd cycle make a component non-bipartite.
    """
    n = A.shape[0]
    color = [None] * n
    comps = []
    for start in range(n):
        if color[start] is not None:
            continue
        color[start] = 0
        queue = [start]
        bipartite = A[start, start] == 0
        members = 1
        while queue:
            u = queue.pop()
            for w in np.nonzero(A[u])[0]:
                w = int(w)
                if w == u:
                    bipartite = False
                    continue
                if color[w] is None:
                    color[w] = color[u] ^ 1
                    members += 1
                    queue.append(w)
                elif color[w] == color[u]:
                    bipartite = False
        comps.append((members, bipartite))
    return comps


@dataclass
class DirectionSpectrum:
    label: str
    q: int
    n: int
    eigenvalues: list
    trivial_plus: int
    trivial_minus: int
    max_nontrivial_abs: float | None
    bound: float
    components: int
    bipartite_components: int
    passed: bool
    trivial_pattern_ok: bool


@dataclass
class RamanujanReport:
    tol: float
    directions: list
    commutation: dict   # (label_v, label_w) -> bool, exact integer check
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "tol": self.tol,
            "passed": self.passed,
            "commutation": {f"{v}|{w}": ok for (v, w), ok in sorted(self.commutation.items())},
            "directions": [
                {
                    "label": d.label,
                    "q": d.q,
                    "n": d.n,
                    "trivial_plus_multiplicity": d.trivial_plus,
                    "trivial_minus_multiplicity": d.trivial_minus,
                    "max_nontrivial_abs": d.max_nontrivial_abs,
                    "ramanujan_bound": d.bound,
                    "components": d.components,
                    "bipartite_components": d.bipartite_components,
                    "trivial_pattern_ok": d.trivial_pattern_ok,
                    "passed": d.passed,
                }
                for d in self.directions
            ],
        }


def _direction_report(label, q, A, tol) -> DirectionSpectrum:
    vals = spectrum(A)
    top = q + 1
    trivial_plus = sum(1 for v in vals if abs(v - top) <= tol)
    trivial_minus = sum(1 for v in vals if abs(v + top) <= tol)
    nontrivial = [v for v in vals if abs(v - top) > tol and abs(v + top) > tol]
    max_abs = max((abs(v) for v in nontrivial), default=None)
    bound = 2.0 * math.sqrt(q)
    comps = _v_components(A)
    n_bip = sum(1 for _, b in comps if b)
    pattern_ok = trivial_plus == len(comps) and trivial_minus == n_bip
    passed = (max_abs is None or max_abs <= bound + tol) and pattern_ok
    return DirectionSpectrum(
        label=label, q=q, n=A.shape[0], eigenvalues=vals,
        trivial_plus=trivial_plus, trivial_minus=trivial_minus,
        max_nontrivial_abs=max_abs, bound=bound,
        components=len(comps), bipartite_components=n_bip,
        passed=passed, trivial_pattern_ok=pattern_ok,
    )


def ramanujan_report(source, tol: float = 1e-9) -> RamanujanReport:
    """Certificate for a CayleyComplex or a [(label, q, matrix)] list.

    Spectra per direction, trivial-eigenvalue pattern vs. the 2-coloring
    oracle, exact integer commutation of all pairs, and the 2 sqrt(q_v)
    bound on everything nontrivial.
    """
    mats = directional_matrices(source) if isinstance(source, CayleyComplex) else list(source)
    workers = int(os.environ.get("LATTICEFORGE_THREADS", "1") or "1")
    if workers > 1 and len(mats) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            dirs = list(pool.map(lambda t: _direction_report(*t, tol), mats))
    else:
        dirs = [_direction_report(label, q, A, tol) for label, q, A in mats]
    commutation = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            li, _, Ai = mats[i]
            lj, _, Aj = mats[j]
            commutation[(li, lj)] = bool(
                np.array_equal(exact_int_matmul(Ai, Aj), exact_int_matmul(Aj, Ai)))
    passed = all(d.passed for d in dirs) and all(commutation.values())
    return RamanujanReport(tol=tol, directions=dirs, commutation=commutation, passed=passed)


# ---------------------------------------------------------------------------
# exports

def spectrum_csv(report: RamanujanReport) -> str:
    lines = ["direction,index,eigenvalue"]
    for d in report.directions:
        for idx, v in enumerate(d.eigenvalues):
            lines.append(f"{d.label},{idx},{v:.12e}")
    return "\n".join(lines) + "\n"


def report_json(report: RamanujanReport) -> str:
    return json.dumps(report.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"


def render_spectrum_figure(report: RamanujanReport, path: str) -> None:
    """Per-direction eigenvalue scatter with the trivial values and the
    2 sqrt(q) band marked; written next to the delimited output."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    ndir = len(report.directions)
    fig = Figure(figsize=(7.0, 2.6 * max(1, ndir)), dpi=130)
    FigureCanvasAgg(fig)
    for i, d in enumerate(report.directions):
        ax = fig.add_subplot(ndir, 1, i + 1)
        xs = range(len(d.eigenvalues))
        ax.scatter(xs, d.eigenvalues, s=4, color="#1f3d7a", linewidths=0)
        for y, style, col in ((d.bound, "--", "#b03030"), (-d.bound, "--", "#b03030"),
                              (d.q + 1, ":", "#777777"), (-(d.q + 1), ":", "#777777")):
            ax.axhline(y, linestyle=style, linewidth=0.9, color=col)
        verdict = "pass" if d.passed else "FAIL"
        ax.set_title(f"direction {d.label}: q={d.q}, bound 2*sqrt(q)={d.bound:.4f} [{verdict}]",
                     fontsize=9)
        ax.set_xlim(-1, len(d.eigenvalues))
        ax.tick_params(labelsize=8)
    fig.suptitle("directional adjacency spectra", fontsize=10)
    fig.tight_layout(rect=(0, 0, 1, 0.97))
    fig.savefig(path)
