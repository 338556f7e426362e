"""ergodic-lab: finite, checkable realizations of entropy-rate and randomness limit theorems."""

__version__ = "0.1.0"
