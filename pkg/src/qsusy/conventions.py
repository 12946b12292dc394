"""Spacetime and spinor conventions shared by the bracket table, the rewrite
rules and the superspace engine.

Metric diag(-1,1,1,1); sigma^0 = identity, sigma^k = Pauli; epsilon_{12} = -1
(so epsilon^{12} = +1 and psi^a = eps^{ab} psi_b).  The Lorentz spinor
matrices b_{mu nu} are normalized so that they represent the rotation algebra
with the exact structure constants of the bracket table
([J_mn, J_rs] = eta_ms J_nr + eta_nr J_ms - eta_mr J_ns - eta_ns J_mr),
which fixes b = -1/4 (sigma_m sigbar_n - sigma_n sigbar_m); the dotted-sector
matrices come out transposed, as usual for an upper-first-index object.
All entries are Gaussian rationals; callers lift them into their own field.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GRat

ETA = (-1, 1, 1, 1)

_G0 = GRat(0)
_G1 = GRat(1)
_GI = GRat(0, 1)

SIGMA_UP = (
    ((_G1, _G0), (_G0, _G1)),
    ((_G0, _G1), (_G1, _G0)),
    ((_G0, -_GI), (_GI, _G0)),
    ((_G1, _G0), (_G0, -_G1)),
)

SIGMABAR_UP = (
    SIGMA_UP[0],
    tuple(tuple(-c for c in row) for row in SIGMA_UP[1]),
    tuple(tuple(-c for c in row) for row in SIGMA_UP[2]),
    tuple(tuple(-c for c in row) for row in SIGMA_UP[3]),
)

SIGMA_LO = tuple(
    tuple(tuple(GRat(ETA[m]) * c for c in row) for row in SIGMA_UP[m])
    for m in range(4)
)
SIGMABAR_LO = tuple(
    tuple(tuple(GRat(ETA[m]) * c for c in row) for row in SIGMABAR_UP[m])
    for m in range(4)
)

# eps_{12} = -1, eps^{12} = +1; same numerics for dotted indices
EPS_LO = ((_G0, GRat(-1)), (_G1, _G0))
EPS_UP = ((_G0, _G1), (GRat(-1), _G0))


def _mat_mul(a, b):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(2)), _G0) for j in range(2))
        for i in range(2)
    )


def _mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def _mat_sub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(2)) for i in range(2))


def _mat_t(a):
    return tuple(tuple(a[j][i] for j in range(2)) for i in range(2))


def b_lorentz(m, n):
    """(b_mn)_alpha^beta acting on undotted supercharges."""
    raw = _mat_sub(_mat_mul(SIGMA_LO[m], SIGMABAR_LO[n]),
                   _mat_mul(SIGMA_LO[n], SIGMABAR_LO[m]))
    return _mat_scale(GRat(Fraction(-1, 4)), raw)


def bbar_lorentz(m, n):
    """(bbar_mn)_alphadot^betadot acting on dotted supercharges."""
    raw = _mat_sub(_mat_mul(SIGMABAR_LO[m], SIGMA_LO[n]),
                   _mat_mul(SIGMABAR_LO[n], SIGMA_LO[m]))
    return _mat_t(_mat_scale(GRat(Fraction(1, 4)), raw))
