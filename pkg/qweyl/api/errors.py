"""
Map library errors onto HTTP status codes.
"""

from fastapi import HTTPException

from qweyl.core.errors import VERIFICATION_FAILED, QWeylError


def http_error(exc: QWeylError) -> HTTPException:
    """400 for bad input, 422 when a computation failed its own checks."""
    status = 422 if exc.exit_code == VERIFICATION_FAILED else 400
    return HTTPException(status_code=status, detail=exc.to_payload())
