#!/usr/bin/env python
# -*- coding: utf-8 -*-

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import io
from os import makedirs, path, rename

#----------------------------------------------------------------------------------------------------------------------------------

def ensure_dir(dir_path):
    if not path.isdir(dir_path):
        makedirs(dir_path)
    return dir_path


def write_atomically(file_path, data):
    """
    Writes `data` (bytes, or text that gets UTF-8 encoded) under a '.part' name, and only renames it into place once the write
    is complete, so that an interrupted run never leaves a truncated file behind.
    """
    if not isinstance(data, bytes):
        data = data.encode('UTF-8')
    part_file_path = file_path + '.part'
    with io.open(part_file_path, 'wb') as file_out:
        file_out.write(data)
    rename(part_file_path, file_path)

#----------------------------------------------------------------------------------------------------------------------------------
