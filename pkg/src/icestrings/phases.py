"""Exact evaluation of rational unit phases.

Quarter turns come out as exact complex integers, so amplitude bookkeeping
that only ever involves signs (every sector with a/m in {0, 1/2}) stays in
exact arithmetic and matrices advertised as equal can be compared with ==.
"""

from __future__ import annotations

from math import gcd

import numpy as np

_QUARTERS = {0: 1.0 + 0.0j, 1: 0.0 + 1.0j, 2: -1.0 + 0.0j, 3: 0.0 - 1.0j}


def unit_phase(num: int, den: int) -> complex:
    """e^{2 pi i num/den} with exact values on the four axes."""
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    num %= den
    if (4 * num) % den == 0:
        return _QUARTERS[4 * num // den]
    return complex(np.exp(2j * np.pi * num / den))
