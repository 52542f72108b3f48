###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

author = "This page is maintained by the quadprice developers."

# Add man page entries with the following information:
# - Relative file path (without .rst extension)
# - Man page name
# - Man page description
# - Author (use [author])
# - Manual section
#
man_pages = [
    ("man1/quadprice", "quadprice", "price discretely monitored options by quadrature", [author], 1),
    ("man5/quadprice-config", "quadprice-config", "quadprice run configuration", [author], 5),
]
