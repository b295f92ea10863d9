version='1.0.0'
data_dir='share/aida'
doc_dir='share/doc/aida'
# The following variables are set / adjusted during
# the build / install process.
checkpoint_format='aida-checkpoint'
checkpoint_version=1
