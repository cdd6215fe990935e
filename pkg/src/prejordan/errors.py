"""Failure classes shared across modules.

InvariantViolation means a mathematical consistency check failed (a claimed
identity does not expand to zero, a module character has a non-integral
multiplicity, a vector left an invariant subspace).  ResourceLimit means a
computation was refused or abandoned because it would exceed a configured
memory or size budget.
"""


class InvariantViolation(RuntimeError):
    pass


class ResourceLimit(RuntimeError):
    pass
