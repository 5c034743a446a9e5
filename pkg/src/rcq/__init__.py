"""rcq: exact symbolic engine and verification CLI for Rankin-Cohen
deformations, Hopf-algebra actions, and flat Fedosov star products."""

__version__ = "0.1.0"
