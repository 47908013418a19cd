#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Binary spatial-temporal map files. A little-endian header

    u32 n_roi, u32 T, u32 channels (=3), u8 normalized_flag

is followed by n_roi*T*3 little-endian float32 values in (roi, t, channel) order. A sidecar file with the same name plus
'.mask' holds n_roi*T bytes, 1 for augmentation-masked cells.

Prepared datasets store ISTMs (RGB means, normalized flag 0); the same format carries normalized STMs.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from os import path
import struct

# 3rd parties
import numpy as np

# stmbp
from ..datastructures import N_CHANNELS, IstmTensor, StmTensor
from ..exceptions import StmError
from ..utils.files import write_atomically

#----------------------------------------------------------------------------------------------------------------------------------

STM_HEADER = struct.Struct('<IIIB')

MASK_SUFFIX = '.mask'

#----------------------------------------------------------------------------------------------------------------------------------

def dump_stm(tensor, file_path):
    """ Writes an IstmTensor or StmTensor. Both files are written under a temporary name and renamed once complete. """
    values = np.ascontiguousarray(tensor.values, dtype='<f4')
    n_roi, T, channels = values.shape # pylint: disable=invalid-name
    normalized = getattr(tensor, 'normalized', False)
    write_atomically(
        file_path,
        STM_HEADER.pack(n_roi, T, channels, 1 if normalized else 0) + values.tobytes(),
    )
    write_atomically(
        file_path + MASK_SUFFIX,
        np.ascontiguousarray(tensor.mask, dtype=np.uint8).tobytes(),
    )


def _read(file_path):
    try:
        with open(file_path, 'rb') as file_in:
            data = file_in.read()
    except IOError as error:
        raise StmError("%s: unreadable STM file" % file_path, reason=error)
    if len(data) < STM_HEADER.size:
        raise StmError("%s: truncated STM header" % file_path)
    n_roi, T, channels, normalized = STM_HEADER.unpack_from(data) # pylint: disable=invalid-name
    if channels != N_CHANNELS:
        raise StmError("%s: expected %d channels, header says %d" % (file_path, N_CHANNELS, channels))
    expected = STM_HEADER.size + 4 * n_roi * T * channels
    if len(data) != expected:
        raise StmError("%s: expected %d bytes, found %d" % (file_path, expected, len(data)))
    values = np.frombuffer(data, dtype='<f4', offset=STM_HEADER.size).reshape(n_roi, T, channels).astype(np.float64)
    mask_path = file_path + MASK_SUFFIX
    if path.exists(mask_path):
        with open(mask_path, 'rb') as file_in:
            mask_bytes = file_in.read()
        if len(mask_bytes) != n_roi * T:
            raise StmError("%s: expected %d mask bytes, found %d" % (mask_path, n_roi * T, len(mask_bytes)))
        mask = np.frombuffer(mask_bytes, dtype=np.uint8).reshape(n_roi, T).astype(bool)
    else:
        mask = None
    return values, mask, bool(normalized)


def load_istm(file_path):
    values, mask, normalized = _read(file_path)
    if normalized:
        raise StmError("%s: holds a normalized STM, not an initial map" % file_path)
    return IstmTensor(values, mask)


def load_stm(file_path, color_space='yuv'):
    values, mask, normalized = _read(file_path)
    return StmTensor(values, mask, normalized=normalized, color_space=color_space)

#----------------------------------------------------------------------------------------------------------------------------------
