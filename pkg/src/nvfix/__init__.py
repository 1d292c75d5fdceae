"""Exact fixed point index of piecewise-linear n-valued maps of the circle."""
