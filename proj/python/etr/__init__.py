"""Error-trade-off relations for approximate joint quantum measurements."""

try:
    from ._etr import *  # noqa: F401,F403  (installed wheel layout)
    from ._etr import __version__  # noqa: F401
except ImportError:  # in-tree build: the extension sits on sys.path directly
    from _etr import *  # noqa: F401,F403
    from _etr import __version__  # noqa: F401
