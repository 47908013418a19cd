#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Checkpoint files. All integers little-endian:

    8 bytes   magic 'STMBPCKP'
    u32       format version
    u32       header length, then that many bytes of UTF-8 `key=value` lines: format_version, target, fold, and the complete
              run config
    u32       CRC-32 of the header bytes
    u32       tensor count, then for each tensor:
                  u16 name length, name (UTF-8), u8 ndim, ndim x u32 dims, u32 CRC-32 of the tensor's bytes
    u32       CRC-32 of the tensor table, from the tensor count to the last entry
    the float32 data of every tensor, in the same order

Every byte is covered by a checksum. Identical runs write byte-identical files.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
from collections import OrderedDict, namedtuple
import struct
import zlib

# 3rd parties
import numpy as np
import torch

# stmbp
from ..config import TARGETS, RunConfig
from ..exceptions import CheckpointError, ConfigError
from ..utils.files import write_atomically
from .network import BpEstimator

#----------------------------------------------------------------------------------------------------------------------------------

MAGIC = b'STMBPCKP'
FORMAT_VERSION = 2

U8 = struct.Struct('<B')
U16 = struct.Struct('<H')
U32 = struct.Struct('<I')

Checkpoint = namedtuple('Checkpoint', (
    'config',
    'target',
    'fold',
    'state', # OrderedDict name -> float32 ndarray
))

#----------------------------------------------------------------------------------------------------------------------------------
# writing

def header_text(config, target, fold):
    return 'format_version=%d\ntarget=%s\nfold=%s\n%s' % (FORMAT_VERSION, target, fold, config.dump())


def encode_checkpoint(model, config, target, fold):
    state = OrderedDict(
        (name, np.ascontiguousarray(tensor.detach().cpu().numpy(), dtype='<f4'))
        for name, tensor in model.state_dict().items()
    )
    header = header_text(config, target, fold).encode('UTF-8')
    table = [U32.pack(len(state))]
    for name, array in state.items():
        encoded_name = name.encode('UTF-8')
        table.append(U16.pack(len(encoded_name)))
        table.append(encoded_name)
        table.append(U8.pack(array.ndim))
        table.extend(U32.pack(dim) for dim in array.shape)
        table.append(U32.pack(_crc(array.tobytes())))
    table = b''.join(table)
    parts = [MAGIC, U32.pack(FORMAT_VERSION), U32.pack(len(header)), header, U32.pack(_crc(header)), table, U32.pack(_crc(table))]
    parts.extend(array.tobytes() for array in state.values())
    return b''.join(parts)


def _crc(data):
    return zlib.crc32(data) & 0xFFFFFFFF


def dump_checkpoint(model, file_path, config, target, fold):
    write_atomically(file_path, encode_checkpoint(model, config, target, fold))

#----------------------------------------------------------------------------------------------------------------------------------
# reading

class _Reader(object):

    def __init__(self, data):
        self.data = data
        self.offset = 0

    def take(self, size, what):
        if self.offset + size > len(self.data):
            raise CheckpointError("Truncated checkpoint while reading %s" % what, offset=self.offset)
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, packer, what):
        return packer.unpack(self.take(packer.size, what))[0]


def decode_checkpoint(data):
    reader = _Reader(data)
    if reader.take(len(MAGIC), 'magic') != MAGIC:
        raise CheckpointError("Not a checkpoint file (bad magic)", offset=0)
    version_offset = reader.offset
    version = reader.unpack(U32, 'format version')
    if version != FORMAT_VERSION:
        raise CheckpointError("Unsupported checkpoint format version %d" % version, offset=version_offset)
    header_offset = reader.offset
    header = reader.take(reader.unpack(U32, 'header length'), 'header')
    if reader.unpack(U32, 'header checksum') != _crc(header):
        raise CheckpointError("Checksum mismatch in header", offset=header_offset)
    config, target, fold = _parse_header(header, header_offset)
    table_offset = reader.offset
    manifest = []
    for _ in range(reader.unpack(U32, 'tensor count')):
        name_offset = reader.offset
        name = reader.take(reader.unpack(U16, 'tensor name length'), 'tensor name')
        shape = tuple(reader.unpack(U32, 'tensor shape') for _ in range(reader.unpack(U8, 'tensor rank')))
        crc = reader.unpack(U32, 'tensor checksum')
        manifest.append((name_offset, name, shape, crc))
    if reader.unpack(U32, 'tensor table checksum') != _crc(data[table_offset:reader.offset - U32.size]):
        raise CheckpointError("Checksum mismatch in tensor table", offset=table_offset)
    state = OrderedDict()
    for name_offset, name, shape, crc in manifest:
        try:
            name = name.decode('UTF-8')
        except UnicodeDecodeError as error:
            raise CheckpointError("Bad tensor name", offset=name_offset, reason=error)
        data_offset = reader.offset
        size = 4 * int(np.prod(shape, dtype=np.int64))
        chunk = reader.take(size, 'tensor data')
        if _crc(chunk) != crc:
            raise CheckpointError("Checksum mismatch in tensor %r" % name, offset=data_offset)
        state[name] = np.frombuffer(chunk, dtype='<f4').reshape(shape)
    if reader.offset != len(data):
        raise CheckpointError("%d unexpected trailing bytes" % (len(data) - reader.offset), offset=reader.offset)
    return Checkpoint(config, target, fold, state)


def _parse_header(header, offset):
    try:
        lines = header.decode('UTF-8').splitlines()
        meta = dict(line.split('=', 1) for line in lines[:3])
        config = RunConfig.parse('\n'.join(lines[3:])).validate()
        target, fold = meta['target'], meta['fold']
        if target not in TARGETS:
            raise ValueError("unknown target %r" % (target,))
    except (UnicodeDecodeError, ValueError, KeyError, ConfigError) as error:
        raise CheckpointError("Unreadable checkpoint header: %s" % (error,), offset=offset, reason=error)
    return config, target, (int(fold) if fold.isdigit() else fold)


def load_checkpoint(file_path):
    try:
        with open(file_path, 'rb') as file_in:
            data = file_in.read()
    except IOError as error:
        raise CheckpointError("%s: unreadable checkpoint" % file_path, reason=error)
    return decode_checkpoint(data)


def restore_estimator(checkpoint):
    model = BpEstimator(checkpoint.config.model, checkpoint.target)
    try:
        model.load_state_dict(OrderedDict(
            (name, torch.from_numpy(array.copy()))
            for name, array in checkpoint.state.items()
        ))
    except RuntimeError as error:
        raise CheckpointError("Checkpoint doesn't fit its own model config: %s" % (error,), reason=error)
    model.eval()
    return model

#----------------------------------------------------------------------------------------------------------------------------------
