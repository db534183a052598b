"""Python interface to the jetnoether core.

The heavy lifting happens in the compiled `_jetnoether` extension; this
package re-exports its surface.
"""

try:
    from ._jetnoether import JetNoetherError, Problem
except ImportError:  # development layout: extension directly on sys.path
    from _jetnoether import JetNoetherError, Problem

__all__ = ["Problem", "JetNoetherError"]
