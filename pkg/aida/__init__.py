########################################################################
#
# File:   __init__.py
# Date:   2026-03-02
#
# Contents:
#   Initialization for module aida.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

from aida.common import *
from aida.diagnostic import error, warning
from aida.config import version
from aida.config import data_dir
from aida.config import doc_dir
# The prefix variable is only available after AIDA is installed.
# Compute it, if it isn't available.
try:
    from aida.config import prefix
except ImportError:
    import os
    import sys
    prefix = os.path.join(os.path.dirname(__file__), os.path.pardir)
    if not os.path.isdir(os.path.join(prefix, data_dir)):
        # Installed without a configured prefix; the data files were
        # placed under the interpreter prefix by 'setup.py'.
        prefix = sys.prefix

version_info = tuple(version.split('.'))

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# End:
