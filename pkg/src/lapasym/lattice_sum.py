"""Exact lattice sums with a deterministic parallel compensated engine.

The central object is

    F_n = sum over grid frequencies t_{j,k} = (2 pi j / n, 2 pi k / n),
          (j,k) != (0,0), 0 <= j,k < n, of 1 / psi(t_{j,k}),

where psi(x) = 1 - (1/L) sum_l cos(s_l . x) for a stencil of integer
vectors s_l.  The trace of the lattice Laplacian pseudoinverse is F_n
divided by a lattice-specific divisor (4, 6 or 8 for the built-ins).

Numerics: psi is evaluated as (2/L) sum_l sin^2(s_l . x / 2), which is
algebraically identical but loses no relative precision near the zeros of
psi.  Because s_l . t_{j,k} is a multiple of 2 pi / n, every summand is a
gather from one precomputed sin^2(pi m / n) table, so argument reduction
is exact.  Rows (fixed j) are summed by numpy's pairwise reduction, then
combined with Kahan-Neumaier compensation in ascending row order.  Worker
threads only decide who computes a row block, never the arithmetic, so
results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DomainError, SingularityError

__all__ = [
    "LatticeSpec",
    "GridGeometry",
    "SumResult",
    "SQUARE",
    "TRIANGULAR",
    "MODIFIED_UNION_JACK",
    "BUILTIN_LATTICES",
    "builtin_lattice",
    "parse_lattice_file",
    "neumaier_sum",
    "kernel_psi",
    "kernel_fm",
    "exact_sum",
    "trace_pseudoinverse",
    "restricted_sum_f2",
    "resolve_workers",
]

_BLOCK_ROWS = 64          # fixed row-block size; independent of worker count
_SINGULAR_FLOOR = 1e-300  # denominators below this abort the sum


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else LAPASYM_WORKERS, else the CPU count."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("LAPASYM_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Lattice and grid descriptions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    """Cosine stencil of a periodic lattice plus its trace divisor."""

    name: str
    stencil: tuple[tuple[int, int], ...]
    trace_divisor: int

    def __post_init__(self):
        if len(self.stencil) < 2:
            raise DomainError("stencil needs at least two vectors")
        if self.stencil[0] != (1, 0) or self.stencil[1] != (0, 1):
            raise DomainError("stencil must start with (1,0), (0,1)")
        if any(v == (0, 0) for v in self.stencil):
            raise DomainError("stencil vectors must be nonzero")
        if self.trace_divisor <= 0:
            raise DomainError("trace divisor must be positive")

    @property
    def L(self) -> int:
        return len(self.stencil)

    @property
    def s_bar(self) -> float:
        """Largest Euclidean norm over the stencil."""
        return max(math.hypot(p, q) for p, q in self.stencil)


SQUARE = LatticeSpec("square", ((1, 0), (0, 1)), 4)
TRIANGULAR = LatticeSpec("triangular", ((1, 0), (0, 1), (1, 1)), 6)
MODIFIED_UNION_JACK = LatticeSpec(
    "modified_union_jack", ((1, 0), (0, 1), (1, -1), (1, 1)), 8)

BUILTIN_LATTICES = {
    s.name: s for s in (SQUARE, TRIANGULAR, MODIFIED_UNION_JACK)
}


def builtin_lattice(name: str) -> LatticeSpec:
    try:
        return BUILTIN_LATTICES[name]
    except KeyError:
        raise DomainError(
            f"unknown lattice {name!r}; choose from {sorted(BUILTIN_LATTICES)}"
        ) from None


def parse_lattice_file(path: str) -> LatticeSpec:
    """Read a lattice config file with lines ``s = j k`` and ``divisor = d``."""
    stencil: list[tuple[int, int]] = []
    divisor = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rhs = line.partition("=")
            key = key.strip()
            parts = rhs.split()
            if key == "s" and len(parts) == 2:
                stencil.append((int(parts[0]), int(parts[1])))
            elif key == "divisor" and len(parts) == 1:
                divisor = int(parts[0])
            else:
                raise DomainError(f"{path}:{lineno}: cannot parse {raw.rstrip()!r}")
    if divisor is None:
        raise DomainError(f"{path}: missing 'divisor = d' line")
    return LatticeSpec(os.path.basename(path), tuple(stencil), divisor)


@dataclass(frozen=True)
class GridGeometry:
    """Residue-class bookkeeping for the restricted summation window.

    n = 4 N + n0 with n0 = n mod 4.  The restricted window keeps the grid
    frequencies with both coordinates at most pi/2 in absolute value,
    which for the cutoff beta = 1 - pi^2/20 is exactly the index square
    |j|, |k| <= N minus the origin.
    """

    n: int
    n0: int
    N: int
    delta_n: float
    beta_n: float
    beta: float = field(default=1.0 - math.pi ** 2 / 20.0)

    @classmethod
    def from_n(cls, n: int) -> "GridGeometry":
        if n < 1:
            raise DomainError(f"grid size must be positive, got {n}")
        n0 = n % 4
        return cls(
            n=n,
            n0=n0,
            N=(n - n0) // 4,
            delta_n=2.0 * math.pi / n,
            beta_n=0.5 * math.pi * (1.0 + (2.0 - n0) / n),
        )

    def in_restricted(self, j: int, k: int) -> bool:
        return abs(j) <= self.N and abs(k) <= self.N and (j, k) != (0, 0)


@dataclass(frozen=True)
class SumResult:
    value: float
    compensation: float
    term_count: int
    n: int
    lattice: LatticeSpec
    kernel: str
    region: str


# ---------------------------------------------------------------------------
# Kernels (pointwise API)
# ---------------------------------------------------------------------------

def kernel_psi(spec: LatticeSpec, x: Sequence[float]) -> float:
    """psi(x) = 1 - (1/L) sum_l cos(s_l . x), evaluated as a sin^2 mean."""
    a, b = x
    acc = 0.0
    for p, q in spec.stencil:
        s = math.sin(0.5 * (p * a + q * b))
        acc += s * s
    return (2.0 / spec.L) * acc


def kernel_fm(spec: LatticeSpec, m: int, x: Sequence[float]) -> float:
    """f_m(x) = 1 / p_m(x), the reciprocal truncated-Taylor kernel.

    p_m is the order-2m Taylor polynomial of psi at the origin,
    p_m(x) = (1/L) sum_l sum_{i=1}^m (-1)^(i+1) (s_l . x)^(2i) / (2i)!.
    Raises SingularityError when p_m vanishes at x.
    """
    if m < 1:
        raise DomainError(f"Taylor order m must be >= 1, got {m}")
    a, b = x
    acc = 0.0
    for p, q in spec.stencil:
        u2 = (p * a + q * b) ** 2
        term = 0.0
        power = 1.0
        for i in range(1, m + 1):
            power *= u2 / ((2 * i - 1) * (2 * i))
            term += power if i % 2 == 1 else -power
        acc += term
    denom = acc / spec.L
    if abs(denom) < _SINGULAR_FLOOR:
        raise SingularityError(f"p_{m} vanishes at x = {tuple(x)!r}", point=tuple(x))
    return 1.0 / denom


# ---------------------------------------------------------------------------
# Compensated accumulation
# ---------------------------------------------------------------------------

def neumaier_sum(values: Iterable[float]) -> tuple[float, float]:
    """Kahan-Neumaier accumulation -> (running sum, compensation).

    The compensated total is ``sum + compensation``.  Strictly sequential
    in the order given, which is what the determinism contract relies on.
    """
    s = 0.0
    c = 0.0
    for x in values:
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s, c


# ---------------------------------------------------------------------------
# Full-window sum engine
# ---------------------------------------------------------------------------

def _sin_sq_table(n: int) -> np.ndarray:
    """sin^2(pi m / n) for m in [0, n), built symmetric: S[m] == S[n - m]."""
    half = n // 2
    s = np.sin(np.pi * np.arange(half + 1) / n)
    table = np.empty(n)
    table[: half + 1] = s * s
    if half + 1 < n:
        table[half + 1:] = table[1: n - half][::-1]
    return table


class _EngineTables:
    """Precomputed gather tables for one (stencil, n) pair.

    Stencil vectors split three ways: q = 0 vectors contribute a scalar
    per row, p = 0 vectors one fixed row-independent vector, and the rest
    need a per-row gather from the sin^2 table.
    """

    def __init__(self, spec, n):
        self.n = n
        self.table = _sin_sq_table(n)
        self.scale = 2.0 / spec.L
        k = np.arange(n, dtype=np.int64)
        self.fixed = np.zeros(n)
        self.row_scalar_ps = []
        self.general = []
        for p, q in spec.stencil:
            if p == 0:
                self.fixed += self.table.take(np.mod(q * k, n), mode="wrap")
            elif q == 0:
                self.row_scalar_ps.append(p)
            else:
                self.general.append((p, np.mod(q * k, n)))

    def psi_rows(self, j0, j1):
        """psi on rows j0..j1-1 as a (j1-j0, n) array."""
        n = self.n
        jj = np.arange(j0, j1, dtype=np.int64)
        scalars = np.zeros(j1 - j0)
        for p in self.row_scalar_ps:
            scalars += self.table.take(np.mod(p * jj, n), mode="wrap")
        acc = np.add.outer(scalars, self.fixed)
        for p, beta in self.general:
            idx = beta[None, :] + np.mod(p * jj, n)[:, None]
            acc += self.table.take(idx, mode="wrap")
        acc *= self.scale
        return acc


def _check_rows(psi, j0, skip_origin):
    """Guard against vanishing denominators, reporting the offending index."""
    view = psi[0, 1:] if skip_origin else psi
    if view.size == 0:
        return
    flat = int(np.argmin(view))
    if view.flat[flat] < _SINGULAR_FLOOR:
        if skip_origin:
            j, k = j0, flat + 1
        else:
            j, k = j0 + flat // psi.shape[1], flat % psi.shape[1]
        raise SingularityError(
            f"psi vanishes at grid index (j, k) = ({j}, {k})", point=(j, k))


def _row_sums_block(tables, j0, j1, out):
    psi = tables.psi_rows(j0, j1)
    if j0 == 0:
        _check_rows(psi[:1], 0, skip_origin=True)
        row0 = psi[0, 1:]
        out[0] = (1.0 / row0).sum() if row0.size else 0.0
        if j1 > 1:
            _check_rows(psi[1:], 1, skip_origin=False)
            out[1:j1] = (1.0 / psi[1:]).sum(axis=1)
    else:
        _check_rows(psi, j0, skip_origin=False)
        out[j0:j1] = (1.0 / psi).sum(axis=1)


def exact_sum(spec: LatticeSpec, n: int, workers: int | None = None) -> SumResult:
    """F_n over the full window j, k in [0, n) minus the origin.

    Deterministic: the value is bit-identical across runs and worker
    counts.  Parallelism is over fixed 64-row blocks; the per-row pairwise
    sums are reduced with Neumaier compensation in ascending row order.
    """
    if n < 1:
        raise DomainError(f"grid size must be positive, got {n}")
    tables = _EngineTables(spec, n)
    row_sums = np.empty(n)
    blocks = [(j0, min(j0 + _BLOCK_ROWS, n)) for j0 in range(0, n, _BLOCK_ROWS)]
    nworkers = resolve_workers(workers)
    if nworkers > 1 and len(blocks) > 4:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            futures = [pool.submit(_row_sums_block, tables, j0, j1, row_sums)
                       for j0, j1 in blocks]
            for fut in futures:
                fut.result()
    else:
        for j0, j1 in blocks:
            _row_sums_block(tables, j0, j1, row_sums)
    total, comp = neumaier_sum(row_sums.tolist())
    return SumResult(
        value=total + comp,
        compensation=comp,
        term_count=n * n - 1,
        n=n,
        lattice=spec,
        kernel="f",
        region="full",
    )


def trace_pseudoinverse(spec: LatticeSpec, n: int, workers: int | None = None) -> float:
    """tr of the Laplacian pseudoinverse: F_n / trace_divisor."""
    return exact_sum(spec, n, workers=workers).value / spec.trace_divisor


# ---------------------------------------------------------------------------
# Restricted-window quartic-kernel sum (square lattice)
# ---------------------------------------------------------------------------

def restricted_sum_f2(n: int, spec: LatticeSpec = SQUARE,
                      workers: int | None = None) -> SumResult:
    """Sum of the quartic kernel f2 over the restricted window.

    For the square stencil this is
    (n^2/pi^2) * sum over |j|,|k| <= N, (j,k) != 0 of
    1 / (j^2 + k^2 - (pi^2 / 3 n^2)(j^4 + k^4)),
    computed through the four-fold sign symmetry as 4*(axis part +
    open-quadrant part).  Denominators are positive throughout the window.
    """
    if spec.stencil != SQUARE.stencil:
        raise DomainError("the restricted quartic sum is defined for the square stencil")
    geom = GridGeometry.from_n(n)
    if geom.N < 1:
        raise DomainError(f"restricted window is empty for n = {n}; need n >= 4")
    N = geom.N
    c = math.pi ** 2 / (3.0 * n * n)
    k = np.arange(1, N + 1, dtype=np.float64)
    k2 = k * k
    k4 = k2 * k2
    axis_den = k2 - c * k4
    quad_den = k2[:, None] + k2[None, :] - c * (k4[:, None] + k4[None, :])
    if min(axis_den.min(), quad_den.min()) < _SINGULAR_FLOOR:
        bad = int(np.argmin(axis_den))
        raise SingularityError(
            f"restricted denominator vanishes at k = {bad + 1}", point=(bad + 1, 0))
    rows = [float((1.0 / axis_den).sum())]
    rows.extend((1.0 / quad_den).sum(axis=1).tolist())
    total, comp = neumaier_sum(rows)
    scale = 4.0 * n * n / math.pi ** 2
    return SumResult(
        value=scale * (total + comp),
        compensation=scale * comp,
        term_count=(2 * N + 1) ** 2 - 1,
        n=n,
        lattice=spec,
        kernel="f2",
        region="restricted",
    )
