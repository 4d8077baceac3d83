# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
paleywiener - Numerical Paley-Wiener Toolkit
Decay of Fourier transforms of compactly supported functions on ℝⁿ and on the
Euclidean motion group M(2)

Dichotomy:
- Log-integral classification of decay envelopes (1-D and radial)
- Certified construction of compactly supported functions with prescribed decay

Euclidean transforms:
- Grid Fourier transform, Radon transform, slice-projection checks
- Radialization and dimension-generic radial transforms

Complex analysis:
- Poisson integrals and log-majorant checks in the upper half-plane
- Exponential type estimation

Motion group M(2):
- Matrix coefficients, group Fourier transform, Hilbert-Schmidt decay
- Plancherel consistency, bi-invariant reduction

Schrödinger:
- Free evolution on ℝⁿ and M(2), uniqueness experiments
"""

__version__ = "0.3.0"
