"""Proof tools for intuitionistic epistemic logic, modal verification logic and
explicit proofs with verification."""

__version__ = "0.1.0"
