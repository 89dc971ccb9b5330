"""Ready-made node dynamics used by the demos and the command line."""

from __future__ import annotations

import numpy as np

from .dynamics import PwsVectorField, SigmaQuadCertificate, SwitchTerm, certificate_from_decomposition

__all__ = ["relay_feedback_system", "relay_certificate"]


def relay_feedback_system() -> PwsVectorField:
    """Three-dimensional chaotic relay feedback system.

    Linear part with an unstable complex pair, plus a relay acting on the
    first coordinate: f(x) = A x - B sign(x_1).
    """
    a = np.array(
        [
            [1.51, 1.0, 0.0],
            [-99.922, 0.0, 1.0],
            [-5.0, 0.0, 0.0],
        ]
    )
    b = np.array([1.0, -2.0, 1.0])
    return PwsVectorField(a=a, switch_terms=(SwitchTerm(gain=b, coordinate=0),))


def relay_certificate() -> SigmaQuadCertificate:
    """Constructive certificate for the relay system with P = identity."""
    return certificate_from_decomposition(relay_feedback_system())
