"""Simultaneous Padé approximants of q-polylogarithms, in exact arithmetic."""
