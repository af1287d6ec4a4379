# -*- coding: utf-8 -*-

"""
Sparse linear solves used by resistance, hitting and trace computations.

The exact solver eliminates on the diagonal in a Markowitz (minimum
fill) order over `fractions.Fraction` entries.  It is meant for the
diagonally dominant systems that arise here: grounded Laplacians and
I − P restricted to transient states.
"""

# **** IMPORTS ****
import heapq
import logging
from fractions import Fraction
from collections import defaultdict
from typing import Dict, Hashable, List, Optional, Set, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from treewalk import config
from treewalk.exceptions import InconsistencyError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
SparseRows = Dict[int, Dict[int, Fraction]]
SparseColumns = Dict[int, Dict[Hashable, Fraction]]

# **** FUNCTIONS ****
def solve_exact(matrix: SparseRows, rhs: SparseColumns) -> SparseColumns:
    """
    Solves M·X = B exactly for every right-hand-side column.

    Args:
        matrix (SparseRows): Row index ↦ {column index ↦ entry}; square over the row indices.
        rhs (SparseColumns): Row index ↦ {right-hand-side label ↦ entry}.

    Returns:
        SparseColumns: Unknown index ↦ {right-hand-side label ↦ value}.

    Raises:
        InconsistencyError: If a zero pivot is met (singular system).
    """
    rows: SparseRows = {i: {j: Fraction(v) for j, v in row.items() if v != 0} for i, row in matrix.items()}
    values: SparseColumns = {i: {c: Fraction(v) for c, v in rhs.get(i, {}).items() if v != 0} for i in rows}
    columns: Dict[int, Set[int]] = defaultdict(set)
    for i, row in rows.items():
        for j in row:
            columns[j].add(i)

    heap: List[Tuple[int, int]] = [(len(rows[i]) * len(columns[i]), i) for i in rows]
    heapq.heapify(heap)
    done: Set[int] = set()
    order: List[int] = []
    while heap:
        cost, i = heapq.heappop(heap)
        if i in done:
            continue
        current = len(rows[i]) * len(columns[i])
        if cost != current:
            heapq.heappush(heap, (current, i))
            continue
        pivot_row = rows[i]
        pivot = pivot_row.get(i)
        if not pivot:
            raise InconsistencyError(f"Singular system: zero pivot at unknown {i}")
        done.add(i)
        order.append(i)
        for j in pivot_row:
            columns[j].discard(i)
        pivot_values = values[i]
        for r in [r for r in columns[i] if r not in done]:
            row_r = rows[r]
            factor = row_r.pop(i) / pivot
            for j, v in pivot_row.items():
                if j == i:
                    continue
                updated = row_r.get(j, 0) - factor * v
                if updated == 0:
                    if j in row_r:
                        del row_r[j]
                        columns[j].discard(r)
                else:
                    if j not in row_r:
                        columns[j].add(r)
                    row_r[j] = updated
            values_r = values[r]
            for label, v in pivot_values.items():
                updated = values_r.get(label, 0) - factor * v
                if updated == 0:
                    values_r.pop(label, None)
                else:
                    values_r[label] = updated
            heapq.heappush(heap, (len(row_r) * len(columns[r]), r))
        columns[i] = set()
        for j in pivot_row:
            if j not in done:
                heapq.heappush(heap, (len(rows[j]) * len(columns[j]), j))

    solution: SparseColumns = {}
    for i in reversed(order):
        row = rows[i]
        result = dict(values[i])
        for j, v in row.items():
            if j == i:
                continue
            for label, x in solution[j].items():
                updated = result.get(label, 0) - v * x
                if updated == 0:
                    result.pop(label, None)
                else:
                    result[label] = updated
        pivot = row[i]
        solution[i] = {label: v / pivot for label, v in result.items()}
    logger.debug(f"Exact elimination of {len(order)} unknowns")
    return solution


def solve_float(matrix: SparseRows, rhs: Dict[int, float], tolerance: Optional[float] = None) -> Tuple[Dict[int, float], float, str]:
    """
    Solves a symmetric positive definite sparse system in floating point.

    Conjugate gradients with a Jacobi preconditioner are tried first; a
    sparse direct solve is used when the relative residual stays above
    `tolerance`.

    Returns:
        Tuple[Dict[int, float], float, str]: Solution, relative residual and method ("iterative" or "direct").
    """
    tolerance = config.RESIDUAL_TOLERANCE if tolerance is None else tolerance
    unknowns = sorted(matrix)
    index = {node: position for position, node in enumerate(unknowns)}
    data, row_index, col_index = [], [], []
    for i, row in matrix.items():
        for j, v in row.items():
            row_index.append(index[i])
            col_index.append(index[j])
            data.append(float(v))
    size = len(unknowns)
    laplacian = sparse.csr_matrix((data, (row_index, col_index)), shape=(size, size))
    b = np.zeros(size)
    for i, v in rhs.items():
        b[index[i]] = float(v)

    norm = np.linalg.norm(b) or 1.0
    diagonal = laplacian.diagonal()
    preconditioner = sparse.diags(np.where(diagonal != 0, 1.0 / diagonal, 1.0))
    x, info = sparse_linalg.cg(laplacian, b, rtol=tolerance * 1e-2, atol=0.0, maxiter=20 * size + 100, M=preconditioner)
    residual = float(np.linalg.norm(laplacian @ x - b) / norm)
    method = "iterative"
    if info != 0 or residual > tolerance:
        logger.warning(f"Conjugate gradients stopped at residual {residual:.3e} (info={info}); using a direct solve")
        x = sparse_linalg.spsolve(laplacian.tocsc(), b)
        residual = float(np.linalg.norm(laplacian @ x - b) / norm)
        method = "direct"
    return {node: float(x[index[node]]) for node in unknowns}, residual, method


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
