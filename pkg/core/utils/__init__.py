"""
Core utilities for jifkit.
"""

from core.utils.formatting import NA, format_fixed, round_half_away

__all__ = [
    'NA',
    'format_fixed',
    'round_half_away',
]
