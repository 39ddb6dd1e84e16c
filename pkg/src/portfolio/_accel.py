"""Backend selection for the numeric kernels.

Set ``PORTFOLIO_DISABLE_NUMBA=1`` to force the pure-numpy path. The numba
path is used otherwise, provided numba imports cleanly.
"""
import os

try:
    import numba  # noqa: F401
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
else:
    HAVE_NUMBA = True


def numba_disabled():
    return os.environ.get("PORTFOLIO_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and not numba_disabled()
