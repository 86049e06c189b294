"""Column-current recurrence solution and current-field reconstruction.

The hammock is treated as a full rectangle of N columns and M + 2 rows
whose top and bottom rows are perfect conductors (the two hubs). With
I_k the vector of M + 1 upward link currents in column k, Kirchhoff and
Ohm reduce to a three-term matrix recurrence in k, closed at the side
boundaries by one-sided relations. Transforming by the eigenvector matrix
of the link-coupling pattern decouples the rows into M + 1 scalar
recurrences, each solved in closed form region by region (left of the
input column, between the two nodes, right of the output column).

Sign conventions: upward currents are positive, and the mode amplitudes
returned by :func:`solve_modes` correspond to a unit current entering the
network at the *output* column node and leaving at the input column node;
the uniform mode is the limit value -J*(y_out - y_in)/N. The resistance
difference formula in :func:`resistance_rt` is stated for that
orientation, and :func:`reconstruct_currents` negates the reconstruction
where needed so that in its field the injected current always enters the
network at the requested source node and leaves at the sink.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .closed_form import _decay_table
from .hyperbolic import log_cosh, log_sinh
from .lattice import (
    GridNode,
    HammockSpec,
    LatticeError,
    NodeLike,
    ResistanceResult,
    SpanCoords,
    node_code,
    require_interior,
    span_coords,
)


def coupling_matrix(rows: int) -> np.ndarray:
    """Link-coupling pattern of the M + 1 vertical links in a column.

    Ones on the super/sub-diagonals plus unit corner entries; the free
    chain matrix is 2*I minus this.
    """
    if rows < 1:
        raise LatticeError(f"need at least one row, got {rows}")
    n = rows + 1
    matrix = np.zeros((n, n))
    idx = np.arange(n - 1)
    matrix[idx, idx + 1] = 1.0
    matrix[idx + 1, idx] = 1.0
    matrix[0, 0] = 1.0
    matrix[-1, -1] = 1.0
    return matrix


@dataclass(frozen=True)
class TransformPair:
    """Row-eigenvector matrix of the coupling pattern and its inverse.

    ``forward`` has the eigenvectors as rows (entry [i, j] =
    cos((2j+1) * chi_i) with chi_i = i*pi/(2M+2), 0-based); ``inverse`` is
    the explicit inverse whose first column is 1/(M+1).
    """

    forward: np.ndarray
    inverse: np.ndarray


def _mode_angles(rows: int) -> np.ndarray:
    return np.arange(rows + 1) * np.pi / (2.0 * (rows + 1))


@lru_cache(maxsize=64)
def mode_transform(rows: int) -> TransformPair:
    """Build (and cache) the transform pair for M + 1 link rows."""
    if rows < 1:
        raise LatticeError(f"need at least one row, got {rows}")
    n = rows + 1
    chis = _mode_angles(rows)
    j = np.arange(n)
    forward = np.cos((2 * j[None, :] + 1) * chis[:, None])
    inverse = (2.0 / n) * np.cos((2 * j[:, None] + 1) * chis[None, :])
    inverse[:, 0] = 1.0 / n
    forward.flags.writeable = False
    inverse.flags.writeable = False
    return TransformPair(forward=forward, inverse=inverse)


def mode_weights(rows: int, height: int) -> np.ndarray:
    """Per-mode weights of the link-current sum above ``height``.

    Summing the inverse transform over link rows height+1 .. M+1 gives
    (M+1-height)/(M+1) for the uniform mode and
    -sin(2*height*chi_i) / ((M+1)*sin(chi_i)) for the rest.
    """
    if not 0 <= height <= rows + 1:
        raise LatticeError(f"height {height} outside 0..{rows + 1}")
    n = rows + 1
    chis = _mode_angles(rows)
    weights = np.empty(n)
    weights[0] = (n - height) / n
    if n > 1:
        weights[1:] = -np.sin(2.0 * height * chis[1:]) / (n * np.sin(chis[1:]))
    return weights


def _zeta(rows: int, height: int) -> np.ndarray:
    """Transformed unit-injection profile at ``height``, per mode."""
    chis = _mode_angles(rows)
    return -2.0 * np.sin(2.0 * height * chis) * np.sin(chis)


@dataclass(frozen=True)
class RegionSolution:
    """Per-mode amplitudes of the three-region recurrence solution.

    ``*_growth`` multiplies root**k, ``*_decay`` multiplies root**(-k);
    ``denom`` is root**N - root**(-N). The barred boundary relations
    right_decay = right_growth * root**(2*span_right + 1) and
    left_growth = left_decay * root**(2*span_left + 1) hold by
    construction. Amplitudes grow like root**N, so reconstruction is a
    desk-scale tool; the resistance path never materialises them.
    """

    spec: HammockSpec
    coords: SpanCoords
    injected: float
    roots: np.ndarray
    mid_growth: np.ndarray
    mid_decay: np.ndarray
    right_growth: np.ndarray
    right_decay: np.ndarray
    left_growth: np.ndarray
    left_decay: np.ndarray
    denom: np.ndarray


def _boundary_modes(spec: HammockSpec, coords: SpanCoords,
                    injected: float) -> tuple[np.ndarray, np.ndarray]:
    """Stable transformed values at the output and input columns.

    Everything is assembled from log-domain hyperbolic ratios, so this is
    the path that scales to 10^4+ rows and columns.
    """
    rows, cols = spec.rows, spec.cols
    left, right = coords.span_left, coords.span_right
    p, q = coords.p_offset, coords.q_offset
    half = _decay_table(rows, spec.ratio)
    log_den = log_sinh(2.0 * half) + log_sinh(2.0 * cols * half)
    ratio_out = np.exp(log_cosh((2 * (right - q) + 1) * half)
                       + log_cosh((2 * (left + q) + 1) * half) - log_den)
    ratio_cross = np.exp(log_cosh((2 * (right - q) + 1) * half)
                         + log_cosh((2 * (left - p) + 1) * half) - log_den)
    ratio_in = np.exp(log_cosh((2 * (right + p) + 1) * half)
                      + log_cosh((2 * (left - p) + 1) * half) - log_den)
    zeta_in = _zeta(rows, coords.y_in)[1:]
    zeta_out = _zeta(rows, coords.y_out)[1:]
    scale = spec.ratio * injected
    x_out = np.empty(rows + 1)
    x_in = np.empty(rows + 1)
    x_out[0] = x_in[0] = -injected * (coords.y_out - coords.y_in) / cols
    x_out[1:] = scale * (ratio_out * zeta_out - ratio_cross * zeta_in)
    x_in[1:] = -scale * (ratio_in * zeta_in - ratio_cross * zeta_out)
    return x_out, x_in


def solve_modes(spec: HammockSpec, coords: SpanCoords,
                injected: float) -> tuple[RegionSolution, np.ndarray, np.ndarray]:
    """Solve the decoupled recurrences; return amplitudes and boundary values.

    The returned arrays are the transformed column values at the output
    column (k = q_offset) and input column (k = -p_offset). The uniform
    mode is the analytic limit -J*(y_out - y_in)/N; for the others the
    nonzero denominator root**N - root**(-N) is asserted.
    """
    rows, cols = spec.rows, spec.cols
    if coords.cols != cols:
        raise LatticeError(
            f"span frame covers {coords.cols} columns, spec has {cols}"
        )
    half = _decay_table(rows, spec.ratio)
    roots = np.empty(rows + 1)
    roots[0] = 1.0
    roots[1:] = np.exp(2.0 * half)
    denom = np.zeros(rows + 1)
    denom[1:] = roots[1:] ** cols - roots[1:] ** (-cols)
    assert np.all(denom[1:] > 0.0), "nonuniform modes must have root > 1"

    lam = roots[1:]
    left, right = coords.span_left, coords.span_right
    p, q = coords.p_offset, coords.q_offset
    gap = lam - 1.0 / lam
    c_in = spec.ratio * injected * _zeta(rows, coords.y_in)[1:] / gap
    c_out = spec.ratio * injected * _zeta(rows, coords.y_out)[1:] / gap

    b_growth = (c_in * (lam ** p + lam ** (2 * left - p + 1))
                - c_out * (lam ** (-q) + lam ** (q + 2 * left + 1))) \
        / (1.0 - lam ** (2 * cols))
    b_decay = b_growth * lam ** (2 * right + 1)
    a_growth = b_growth + c_out * lam ** (-q)
    a_decay = b_decay - c_out * lam ** q
    s_decay = a_decay + c_in * lam ** (-p)
    s_growth = s_decay * lam ** (2 * left + 1)

    uniform = -injected * (coords.y_out - coords.y_in) / cols

    def with_uniform(values: np.ndarray) -> np.ndarray:
        out = np.empty(rows + 1)
        out[0] = uniform / 2.0
        out[1:] = values
        return out

    solution = RegionSolution(
        spec=spec,
        coords=coords,
        injected=injected,
        roots=roots,
        mid_growth=with_uniform(a_growth),
        mid_decay=with_uniform(a_decay),
        right_growth=with_uniform(b_growth),
        right_decay=with_uniform(b_decay),
        left_growth=with_uniform(s_growth),
        left_decay=with_uniform(s_decay),
        denom=denom,
    )
    x_out, x_in = _boundary_modes(spec, coords, injected)
    return solution, x_out, x_in


def transformed_columns(solution: RegionSolution) -> np.ndarray:
    """Transformed column values for every column.

    Column k follows the right-region solution for k > q_offset, the
    middle one for -p_offset <= k <= q_offset and the left one below.
    Evaluating the raw amplitudes loses digits like root**(2N), so each
    region is assembled from grouped exponential terms whose exponents
    never exceed 2N columns; every term is then bounded and the absolute
    error stays at rounding level.
    """
    spec, coords = solution.spec, solution.coords
    rows, cols = spec.rows, spec.cols
    left_s, right_s = coords.span_left, coords.span_right
    p, q = coords.p_offset, coords.q_offset
    ks = np.arange(-left_s, right_s + 1)

    two_log = 2.0 * _decay_table(rows, spec.ratio)
    gap = 2.0 * np.sinh(two_log)
    c_in = spec.ratio * solution.injected * _zeta(rows, coords.y_in)[1:] / gap
    c_out = spec.ratio * solution.injected * _zeta(rows, coords.y_out)[1:] / gap
    shrink = -np.expm1(-2.0 * cols * two_log)  # 1 - root**(-2N)

    def region(numerators, column_exponents) -> np.ndarray:
        total = np.zeros((rows, ks.size))
        for coeff, base in numerators:
            for exps in column_exponents:
                shifted = (base + exps - 2 * cols)[None, :] * two_log[:, None]
                total -= coeff[:, None] * np.exp(shifted)
        return total / shrink[:, None]

    right = region(
        [(c_in, p), (c_in, 2 * left_s - p + 1),
         (-c_out, -q), (-c_out, q + 2 * left_s + 1)],
        [ks, 2 * right_s + 1 - ks],
    )
    middle = region(
        [(c_in, p), (c_in, 2 * left_s - p + 1),
         (-c_out, q + 2 * left_s + 1), (-c_out, 2 * cols - q)],
        [ks],
    ) + region(
        [(c_in, 2 * right_s + 1 + p), (c_in, 2 * cols - p),
         (-c_out, 2 * right_s + 1 - q), (-c_out, q)],
        [-ks],
    )
    left = region(
        [(c_in, 2 * right_s + p + 1), (c_in, -p),
         (-c_out, 2 * right_s - q + 1), (-c_out, q)],
        [2 * left_s + 1 + ks, -ks],
    )

    values = np.empty((rows + 1, ks.size))
    values[0, :] = -solution.injected * (coords.y_out - coords.y_in) / cols
    values[1:, :] = np.where(ks[None, :] > q, right,
                             np.where(ks[None, :] >= -p, middle, left))
    return values


def resistance_rt(spec: HammockSpec, a: NodeLike, b: NodeLike) -> ResistanceResult:
    """Resistance from the recurrence-transform mode solution.

    Potential differences are summed along the path through the common
    top hub: R = (s/J) * (sum_i X_out(i) * w_i(y_out) -
    sum_i X_in(i) * w_i(y_in)) with the weights of
    :func:`mode_weights`. Scales to very large lattices.
    """
    a = require_interior(spec, a)
    b = require_interior(spec, b)
    coords = span_coords(spec, a, b)
    x_out, x_in = _boundary_modes(spec, coords, 1.0)
    w_out = mode_weights(spec.rows, coords.y_out)
    w_in = mode_weights(spec.rows, coords.y_in)
    value = float(spec.s) * (float(x_out @ w_out) - float(x_in @ w_in))
    return ResistanceResult(value, "rt", {"swapped": coords.swapped})


@dataclass(frozen=True)
class CurrentField:
    """All vertical link currents for one injection problem.

    ``currents[i-1, x-1]`` is the upward current through the i-th link
    (i = 1..M+1, counted from the bottom hub) of column x. A current of
    ``injected`` amperes enters at ``source`` and leaves at ``sink``; rail
    currents inside the hubs are implied, not stored. Immutable.
    """

    spec: HammockSpec
    source: GridNode
    sink: GridNode
    injected: float
    coords: SpanCoords
    currents: np.ndarray

    def column_label(self, x: int) -> int:
        """Span-frame label k of grid column x."""
        return x - 1 - self.coords.span_left

    def to_csv(self) -> str:
        """Rows of ``k,i,current`` over all columns and links."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["k", "i", "current"])
        for x in range(1, self.spec.cols + 1):
            for i in range(1, self.spec.rows + 2):
                writer.writerow([self.column_label(x), i,
                                 repr(float(self.currents[i - 1, x - 1]))])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "spec": self.spec.as_dict(),
            "source": node_code(self.source),
            "sink": node_code(self.sink),
            "J": self.injected,
            "span_left": self.coords.span_left,
            "columns": [
                {"k": self.column_label(x),
                 "currents": [float(c) for c in self.currents[:, x - 1]]}
                for x in range(1, self.spec.cols + 1)
            ],
        }
        return json.dumps(payload)


def reconstruct_currents(spec: HammockSpec, a: NodeLike, b: NodeLike,
                         injected: float = 1.0) -> CurrentField:
    """Reconstruct every vertical link current for injection a -> b.

    Inverse-transforms the region solution column by column and orients
    the result so ``injected`` amperes enter at ``a`` and leave at ``b``.
    ``injected`` may be zero (zero field). Desk-scale sizes only; the
    amplitudes grow with root**N.
    """
    a = require_interior(spec, a)
    b = require_interior(spec, b)
    coords = span_coords(spec, a, b)
    solution, _, _ = solve_modes(spec, coords, injected)
    transformed = transformed_columns(solution)
    raw = mode_transform(spec.rows).inverse @ transformed
    currents = raw if coords.swapped else -raw
    currents.flags.writeable = False
    return CurrentField(spec=spec, source=a, sink=b, injected=injected,
                        coords=coords, currents=currents)


def _external_injection(field: CurrentField) -> np.ndarray:
    """(M, N) array of external current into each interior node."""
    spec = field.spec
    ext = np.zeros((spec.rows, spec.cols))
    ext[field.source.y - 1, field.source.x - 1] += field.injected
    ext[field.sink.y - 1, field.sink.x - 1] -= field.injected
    return ext


def _potentials(field: CurrentField) -> np.ndarray:
    """(M+2, N) node potentials, bottom hub pinned to zero per column."""
    drops = float(field.spec.s) * field.currents
    potentials = np.zeros((field.spec.rows + 2, field.spec.cols))
    potentials[1:, :] = -np.cumsum(drops, axis=0)
    return potentials


def kirchhoff_residual(field: CurrentField) -> float:
    """Worst current imbalance over every node, in amperes.

    Horizontal link currents are recovered from Ohm's law on the column
    potentials; the residual covers every interior node, both hubs, and
    the spread of the top-rail potential (scaled to amperes).
    """
    spec = field.spec
    currents = field.currents
    potentials = _potentials(field)
    horizontal = (potentials[1:-1, :-1] - potentials[1:-1, 1:]) / float(spec.r)

    imbalance = currents[:-1, :] - currents[1:, :] + _external_injection(field)
    imbalance[:, 1:] += horizontal
    imbalance[:, :-1] -= horizontal

    residuals = [float(np.abs(imbalance).max()) if imbalance.size else 0.0,
                 abs(float(currents[0, :].sum())),
                 abs(float(currents[-1, :].sum()))]
    top = potentials[-1, :]
    residuals.append(float(np.abs(top - top[0]).max()) / float(spec.s))
    return max(residuals)


def recurrence_residual(field: CurrentField) -> float:
    """Worst violation of the three-column relation, in amperes.

    Interior columns check the full three-term matrix recurrence with the
    source profile of whichever node lives in the column; the two side
    columns check the one-sided boundary relations, again source-aware.
    Single-column instances have no relation to check and return zero.
    """
    spec = field.spec
    rows, cols = spec.rows, spec.cols
    if cols == 1:
        return 0.0
    h = spec.ratio
    coupling = coupling_matrix(rows)
    interior_op = (2.0 * h + 2.0) * np.eye(rows + 1) - h * coupling
    boundary_op = (2.0 * h + 1.0) * np.eye(rows + 1) - h * coupling

    source_profile = np.zeros((rows + 1, cols))

    def add(node: GridNode, amount: float) -> None:
        profile = np.zeros(rows + 1)
        profile[node.y] += 1.0
        profile[node.y - 1] -= 1.0
        source_profile[:, node.x - 1] += amount * profile

    add(field.source, field.injected)
    add(field.sink, -field.injected)

    currents = field.currents
    worst = 0.0
    for c in range(1, cols - 1):
        res = currents[:, c + 1] - interior_op @ currents[:, c] \
            + currents[:, c - 1] + h * source_profile[:, c]
        worst = max(worst, float(np.abs(res).max()))
    res_left = currents[:, 1] - boundary_op @ currents[:, 0] \
        + h * source_profile[:, 0]
    res_right = currents[:, cols - 2] - boundary_op @ currents[:, cols - 1] \
        + h * source_profile[:, cols - 1]
    worst = max(worst, float(np.abs(res_left).max()), float(np.abs(res_right).max()))
    return worst


def potential_path_check(field: CurrentField) -> tuple[float, float]:
    """Potential drop source -> sink along two independent paths, in ohms.

    The first path climbs the source column to the top hub, crosses it,
    and descends the sink column; the second walks horizontally at the
    source height (horizontal currents recovered by charge conservation,
    not potentials) and then vertically up the sink column. Both equal the
    resistance for a consistent field.
    """
    spec = field.spec
    if field.injected == 0.0:
        return 0.0, 0.0
    currents = field.currents
    s, r = float(spec.s), float(spec.r)
    c1, y1 = field.source.x - 1, field.source.y
    c2, y2 = field.sink.x - 1, field.sink.y

    via_rail = s * (currents[y1:, c1].sum() - currents[y2:, c2].sum())

    ext = _external_injection(field)
    conserved = np.zeros((spec.rows, spec.cols - 1)) if spec.cols > 1 else None
    carry = np.zeros(spec.rows)
    for c in range(spec.cols - 1):
        carry = carry + currents[:-1, c] - currents[1:, c] + ext[:, c]
        conserved[:, c] = carry

    drop = 0.0
    if c1 < c2:
        drop += r * conserved[y1 - 1, c1:c2].sum()
    elif c1 > c2:
        drop -= r * conserved[y1 - 1, c2:c1].sum()
    if y2 > y1:
        drop += s * currents[y1:y2, c2].sum()
    elif y2 < y1:
        drop -= s * currents[y2:y1, c2].sum()

    j = field.injected
    return float(via_rail / j), float(drop / j)
