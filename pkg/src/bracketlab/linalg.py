"""Flattening, dense materialization, and Krylov solves for state operators."""
from __future__ import annotations

import numpy as np
import scipy.sparse.linalg as spla

from .errors import ASolveError
from .fields import Schema, State

__all__ = ["flatten", "unflatten", "total_size", "dense_matrix", "krylov_solve"]

_DENSE_LIMIT = 20000


def total_size(schema: Schema) -> int:
    return sum(int(np.prod(schema.shape(name))) for name in schema.names)


def flatten(state: State) -> np.ndarray:
    return np.concatenate([state[name].ravel() for name in state.schema.names])


def unflatten(schema: Schema, vec: np.ndarray) -> State:
    data = {}
    offset = 0
    for name in schema.names:
        shape = schema.shape(name)
        n = int(np.prod(shape))
        data[name] = vec[offset:offset + n].reshape(shape).copy()
        offset += n
    if offset != vec.size:
        raise ValueError("vector length does not match schema")
    return State(schema, data)


def dense_matrix(op, in_schema: Schema, out_schema: Schema | None = None) -> np.ndarray:
    """Materialize a linear State->State map by applying it to basis vectors.

    Intended for small oracle grids; refuses schemas above a size guard.
    """
    out_schema = out_schema or in_schema
    n = total_size(in_schema)
    m = total_size(out_schema)
    if n > _DENSE_LIMIT or m > _DENSE_LIMIT:
        raise ValueError(f"schema too large to materialize densely ({n}x{m})")
    mat = np.empty((m, n))
    basis = np.zeros(n)
    for j in range(n):
        basis[j] = 1.0
        mat[:, j] = flatten(op(unflatten(in_schema, basis)))
        basis[j] = 0.0
    return mat


def krylov_solve(apply, rhs: State, tol: float = 1e-12,
                 maxiter: int | None = None) -> State:
    """Solve apply(x) = rhs with LGMRES from x0 = 0.

    For normal singular operators and consistent right-hand sides the iterates
    stay in the range, so the converged answer is the pseudo-inverse solution.
    """
    schema = rhs.schema
    n = total_size(schema)
    b = flatten(rhs)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return schema.zeros()

    linop = spla.LinearOperator(
        (n, n), matvec=lambda v: flatten(apply(unflatten(schema, v))))
    kwargs = dict(atol=0.0, maxiter=maxiter if maxiter else 10 * n)
    try:
        x, info = spla.lgmres(linop, b, rtol=tol, **kwargs)
    except TypeError:  # older scipy spells the relative tolerance 'tol'
        x, info = spla.lgmres(linop, b, tol=tol, **kwargs)
    if info != 0:
        raise ASolveError(f"Krylov solve did not converge (info={info})")
    resid = np.linalg.norm(flatten(apply(unflatten(schema, x))) - b)
    if resid > 100.0 * tol * bnorm:
        raise ASolveError(f"Krylov solve stagnated (residual {resid:.3e})")
    return unflatten(schema, x)
