"""
Custom exceptions for the obsaudit package.

This module defines a hierarchy of custom exceptions that provide
clear, specific error messages for the different ways a computation
or an audit run can fail.

Exception Hierarchy:
    ObsAuditError (base)
    ├── ConfigError
    ├── ValidationError
    ├── CapExceededError
    ├── ClosureError
    └── ProbeError

A REFUTED audit verdict is never an exception: refuting a printed claim
is a successful computation. Exceptions signal that a value could not be
computed at all.
"""


class ObsAuditError(Exception):
    """
    Base exception for all obsaudit errors.

    Catch this exception to handle any failure raised by the package.

    Example:
        try:
            fixed_space(30)
        except ObsAuditError as e:
            print(f"Computation failed: {e}")
    """

    pass


class ConfigError(ObsAuditError):
    """
    Raised when there's an issue with configuration.

    This exception is raised when:
    - A configuration file is not found or cannot be parsed
    - A configuration file contains unknown keys
    - An environment variable holds a value of the wrong type
    - A cap lies outside its module limit
    """

    pass


class ValidationError(ObsAuditError):
    """
    Raised when input validation fails.

    This exception is raised when:
    - Two truth tables of different arity are combined
    - An arity is below 1 or a point lies outside the cube
    - An unknown predicate family or character name is requested
    - A non-square matrix is passed where a square one is required
    """

    pass


class CapExceededError(ObsAuditError):
    """
    Raised when a configured size cap would be exceeded.

    Dense matrices are limited by ``dense_cap`` and truth tables by
    ``arity_cap``; several operations enforce tighter local caps.
    The CLI maps this exception to exit code 2.
    """

    pass


class ClosureError(ObsAuditError):
    """
    Raised when an iteration does not close within its cap.

    Used by the Krylov space builder and by orbit enumeration when the
    sequence O^k(f) has not become linearly dependent (or periodic)
    before the allowed number of steps.
    """

    pass


class ProbeError(ObsAuditError):
    """
    Raised when the recurrence method cannot certify a minimal polynomial.

    Every random probe produced a polynomial that fails the substitution
    check, so no result is returned.
    """

    pass
