"""Expected value and author credits of n-author publications.

Closed-form credit allocation, a Monte Carlo check of the derivation, and
field-normalized citation indicators (NCS, Hazen percentiles) over ingested
publication records.
"""

from ._credit_engine import *  # noqa: F401,F403
from ._credit_engine import __version__  # noqa: F401
