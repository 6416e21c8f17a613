"""String states of the square-lattice ice model and their spectra."""

from __future__ import annotations

__version__ = "0.1.0"
