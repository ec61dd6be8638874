"""trikernel: a checker for a modal simplicial type theory.

The package exposes four layers:

- ``trikernel.modality``: modality words and 2-cells of the five-generator
  mode theory, with normal forms and bounded 2-cell search.
- ``trikernel.lattice``: decision procedures for the free bounded
  distributive lattice over interval atoms.
- ``trikernel.syntax`` / ``trikernel.kernel``: the surface language and the
  bidirectional checker with locks, the 2-cell action, and definitional
  interval equality.
- ``trikernel.prelude`` / ``trikernel.corpus``: the axiom base and the
  checked library, with their verification harnesses.
"""

from .diagnostics import Diagnostic
from .kernel import Checker
from .corpus import run_corpus
from .prelude import load_prelude, verify_prelude

__version__ = "0.1.0"

__all__ = [
    "Checker",
    "Diagnostic",
    "load_prelude",
    "run_corpus",
    "verify_prelude",
    "__version__",
]
