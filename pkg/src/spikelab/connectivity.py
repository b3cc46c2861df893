"""Connectivity function and exhaustive separation scans."""
from __future__ import annotations

import numpy as np

from .bits import as_mask, elements_of, popcount
from .errors import InvalidParameters
from .matroid import Matroid
from .report import AuditReport


def connectivity_lambda(M: Matroid, X) -> int:
    """lambda(X) = r(X) + r(E - X) - r(M)."""
    X = as_mask(X)
    return M.rank(X) + M.rank(M.ground & ~X) - M.rank()


def connectivity_lambda_dual_form(M: Matroid, X) -> int:
    """The same value via r(X) + r*(X) - |X|."""
    X = as_mask(X)
    return M.rank(X) + M.dual().rank(X) - popcount(X)


def is_n_connected(M: Matroid, k: int) -> AuditReport:
    """Pass iff M has no j-separation for any j < k.

    X is a j-separation for some j < k exactly when
    lambda(X) < min(|X|, |E - X|, k - 1).  The witness is the separation of
    least lambda, ties broken by smallest mask.
    """
    if k < 2:
        raise InvalidParameters("k must be at least 2")
    rep = AuditReport(f"{k}-connected")
    M.require_table()
    lam = M.lambda_table.astype(np.int16)
    pc = M.popcounts.astype(np.int16)
    bound = np.minimum(np.minimum(pc, M.n - pc), k - 1)
    bad = lam < bound
    if not bad.any():
        rep.add("separations", True, f"no j-separation with j < {k}")
        return rep
    idx = np.flatnonzero(bad)
    best = idx[np.argmin(lam[idx])]  # argmin returns the first, i.e. smallest mask
    X = int(best)
    lv = int(lam[best])
    rep.add(
        "separations",
        False,
        f"{lv + 1}-separation with lambda={lv}",
        {"X": elements_of(X), "complement": elements_of(M.ground & ~X), "lambda": lv},
    )
    return rep
