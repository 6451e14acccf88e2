import heapcheck.logic
import heapcheck.datalog
import heapcheck.modelfind
import heapcheck.program
import heapcheck.bmc
import heapcheck.cli

from ._version import __version__, __version_info__
