"""Exact computations around involution generation of plane Cremona groups."""
