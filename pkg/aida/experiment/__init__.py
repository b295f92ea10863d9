########################################################################
#
# File:   __init__.py
# Date:   2026-03-09
#
# Contents:
#   aida.experiment module initialization.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
