"""Cubic and quartic polynomial solvers with Newton-polished roots.

Roots come from companion-matrix eigenvalues (numpy) and are polished with
two Newton steps, which leaves residuals at the 1e-14 level for
well-scaled inputs and makes the output reproducible across runs.
"""

from __future__ import annotations

import numpy as np


class SolverError(ValueError):
    pass


def _newton_polish(coeffs: np.ndarray, roots: np.ndarray, steps: int = 2) -> np.ndarray:
    """Polish roots of the polynomial given by numpy-style coefficients
    (highest degree first). Steps with a vanishing derivative are skipped."""
    der = np.polyder(coeffs)
    out = roots.astype(complex)
    for _ in range(steps):
        pv = np.polyval(coeffs, out)
        dv = np.polyval(der, out)
        ok = np.abs(dv) > 1e-300
        out = np.where(ok, out - pv / np.where(ok, dv, 1.0), out)
    return out


def solve_cubic_complex(c2: complex, c1: complex, c0: complex) -> list[complex]:
    """All three roots of the monic cubic z^3 - c2 z^2 + c1 z - c0.

    The signs follow Vieta: c2, c1, c0 are the elementary symmetric
    polynomials of the roots. Output is sorted by argument (then modulus)
    so repeated calls are reproducible.
    """
    for c in (c2, c1, c0):
        z = complex(c)
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise SolverError("non-finite cubic coefficient")
    coeffs = np.array([1.0, -c2, c1, -c0], dtype=complex)
    roots = np.roots(coeffs)
    roots = _newton_polish(coeffs, roots)
    order = np.lexsort((np.abs(roots), np.angle(roots)))
    return [complex(r) for r in roots[order]]


def solve_quartic_real(coeffs) -> list[float]:
    """Real roots (with multiplicity, ascending) of a real polynomial of
    degree <= 4 given as 5 coefficients, highest degree first.

    A zero leading coefficient degrades gracefully to the lower-degree
    solver. The identically-zero polynomial is rejected.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (5,):
        raise SolverError("expected 5 coefficients (degree-4 polynomial)")
    if not np.all(np.isfinite(c)):
        raise SolverError("non-finite quartic coefficient")
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise SolverError("identically zero polynomial")
    # trim leading coefficients that are exactly zero or negligibly small
    nz = np.abs(c) > 1e-300
    first = int(np.argmax(nz))
    c = c[first:]
    if c.size == 1:
        return []  # nonzero constant: no roots
    roots = np.roots(c)
    roots = _newton_polish(c, roots)
    real = []
    for r in roots:
        if abs(r.imag) <= 1e-8 * max(1.0, abs(r.real)):
            real.append(float(r.real))
    # one more polish pass on the real axis
    der = np.polyder(c)
    polished = []
    for r in real:
        for _ in range(2):
            dv = np.polyval(der, r)
            if abs(dv) > 1e-300:
                step = np.polyval(c, r) / dv
                if abs(step) < 1.0:
                    r = r - step
        polished.append(float(r))
    return sorted(polished)


def polyval_residual(coeffs, root) -> float:
    """|p(root)| for numpy-style coefficients; used by tests as the
    root-quality oracle."""
    return float(abs(np.polyval(np.asarray(coeffs), root)))
