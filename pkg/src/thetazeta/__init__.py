"""Numerical lab for theta(z), the zeta function and prime sums."""
