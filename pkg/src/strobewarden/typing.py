# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The StrobeWarden Authors
#
# SPDX-License-Identifier: LGPL-3.0+

# flake8: noqa

import os
from typing import *
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

# type for file paths
PathUnion = Union[str, os.PathLike]

# a single RGB24 frame, shape (height, width, 3)
Frame = npt.NDArray[np.uint8]

# boolean pixel mask, shape (height, width)
PixelMask = npt.NDArray[np.bool_]

# an (r, g, b) triplet, each channel 0-255
RGB = Tuple[int, int, int]
