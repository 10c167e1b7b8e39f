import logging

__version__ = '0.3.1'

logging.getLogger(__name__).addHandler(logging.NullHandler())
