import sys as _sys

import pkg_resources as _pkg_resources

from tccmap.colex import (  # noqa: F401
    build_48_torus,
    build_bordered,
    build_dual,
    build_hex_torus,
    validate,
)

if (_sys.version_info.major, _sys.version_info.minor) < (3, 7):
    # Can't be tested, as our test harness is using python3.7+.
    raise Exception("Requires python3.7+")  # pragma: no cover


try:
    __version__ = _pkg_resources.get_distribution('tccmap').version
except _pkg_resources.DistributionNotFound:
    __version__ = '0.0.0development'

try:
    __commit__ = _pkg_resources.resource_string('tccmap', 'tccmap_git_version.txt').decode('utf-8')
    __commit__ = __commit__[:7] or 'unknown'
except FileNotFoundError:
    __commit__ = 'unknown'
