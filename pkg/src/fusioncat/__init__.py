"""Fusion categories A_k(G) at roots of unity and their module-categories."""
