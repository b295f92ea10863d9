########################################################################
#
# File:   setup.py
# Date:   2026-03-02
#
# Contents:
#   Installation script for the aida package
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import glob
import os
import os.path

from setuptools import setup

version = '1.0.0'

def include(d, e):
    """Generate a pair of (directory, file-list) for installation.

    'd' -- A directory

    'e' -- A glob pattern"""

    return (d, [f for f in glob.glob('%s/%s' % (d, e)) if os.path.isfile(f)])

setup(name="aida",
      version=version,
      description="Partial and imbalanced adversarial domain adaptation "
                  "with a hierarchical prediction network.",
      packages=['aida',
                'aida.train',
                'aida.experiment',
                'aida.experiment.classes'],
      scripts=['scripts/aida'],
      python_requires='>=3.8',
      install_requires=['numpy>=1.17'],
      extras_require={'test': ['pytest']},
      data_files=[include('share/aida/messages', '*.txt'),
                  include('share/aida/diagnostics', '*.txt')],
      )
