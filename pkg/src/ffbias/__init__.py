"""Character sums over F_q[t] restricted by the number of prime factors."""

__version__ = "0.1.0"
