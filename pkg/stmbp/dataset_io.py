#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
On-disk formats for datasets: manifests, landmark tracks and frame sequences.

Manifests are UTF-8, one record per line, tab-separated:

    sample_id <TAB> frames_path <TAB> landmarks_path <TAB> sbp <TAB> dbp

Lines starting with '#' are comments. Relative paths are resolved against the manifest's own directory. A landmarks_path of '-'
means the frames_path names an already prepared .stm file.

Landmark files are CSV, one row per frame, 136 numeric columns (x1,y1,...,x68,y68), no header.

Frames are either a directory of image files sorted lexicographically (e.g. 000000.png, 000001.png, ...), or a raw blob file
made of a little-endian `u32 T, u32 H, u32 W` header followed by T*H*W*3 bytes of uint8 RGB data. The pixel data is
interleaved, not planar: it is a C-ordered (T, H, W, 3) array, so the R, G and B bytes of a pixel are adjacent and frame t
starts at byte 12 + t*H*W*3.
"""

#----------------------------------------------------------------------------------------------------------------------------------
# includes

# 2+3 compat
from __future__ import absolute_import, division, print_function, unicode_literals

# standards
import csv
import io
import logging
from os import listdir, path
import struct

# 3rd parties
import cv2
import numpy as np

# stmbp
from .config import BP_MAX, BP_MIN
from .datastructures import N_LANDMARKS, FrameSequence, LandmarkTrack, Manifest, ManifestEntry
from .exceptions import FrameError, LandmarkError, ManifestError
from .utils.files import ensure_dir

#----------------------------------------------------------------------------------------------------------------------------------
# constants

NO_LANDMARKS = '-'

FRAME_BLOB_HEADER = struct.Struct('<III')

IMAGE_EXTENSIONS = frozenset(('.png', '.bmp', '.jpg', '.jpeg', '.tif', '.tiff'))

DEFAULT_FPS = 30.0

#----------------------------------------------------------------------------------------------------------------------------------
# manifests

def load_manifest(manifest_path, check_paths=True):
    base_dir = path.dirname(path.abspath(manifest_path))
    try:
        with open(manifest_path, 'rb') as file_in:
            lines = file_in.read().decode('UTF-8').splitlines()
    except (IOError, UnicodeDecodeError) as error:
        raise ManifestError("%s: unreadable manifest" % manifest_path, reason=error)
    entries = []
    seen = set()
    for line_no, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        entry = _parse_manifest_line(line, line_no, base_dir)
        if entry.sample_id in seen:
            raise ManifestError("%s:%d: duplicate sample_id %r" % (manifest_path, line_no, entry.sample_id))
        seen.add(entry.sample_id)
        if check_paths:
            _check_entry_paths(entry, manifest_path, line_no)
        entries.append(entry)
    if not entries:
        logging.warning("%s: manifest is empty", manifest_path)
    return Manifest(entries)


def _parse_manifest_line(line, line_no, base_dir):
    fields = line.split('\t')
    if len(fields) != 5:
        raise ManifestError("line %d: expected 5 tab-separated fields, found %d" % (line_no, len(fields)))
    sample_id, frames_path, landmarks_path, sbp_text, dbp_text = (f.strip() for f in fields)
    if not sample_id:
        raise ManifestError("line %d: empty sample_id" % line_no)
    try:
        sbp = float(sbp_text)
        dbp = float(dbp_text)
    except ValueError as error:
        raise ManifestError("line %d: non-numeric blood pressure value" % line_no, reason=error)
    check_bp_pair(sbp, dbp, 'line %d' % line_no)
    return ManifestEntry(
        sample_id=sample_id,
        frames_path=_resolve(base_dir, frames_path),
        landmarks_path=landmarks_path if landmarks_path == NO_LANDMARKS else _resolve(base_dir, landmarks_path),
        sbp=sbp,
        dbp=dbp,
    )


def check_bp_pair(sbp, dbp, where):
    for name, value in (('sbp', sbp), ('dbp', dbp)):
        if not BP_MIN <= value <= BP_MAX:
            raise ManifestError("%s: %s=%r outside physiological bounds [%g, %g]" % (where, name, value, BP_MIN, BP_MAX))
    if dbp >= sbp:
        raise ManifestError("%s: dbp >= sbp (%r >= %r)" % (where, dbp, sbp))


def _resolve(base_dir, file_path):
    return file_path if path.isabs(file_path) else path.normpath(path.join(base_dir, file_path))


def _check_entry_paths(entry, manifest_path, line_no):
    if not path.exists(entry.frames_path):
        raise ManifestError("%s:%d: frames path not found: %s" % (manifest_path, line_no, entry.frames_path))
    if entry.landmarks_path == NO_LANDMARKS:
        if not entry.frames_path.endswith('.stm'):
            raise ManifestError("%s:%d: landmarks may only be omitted for .stm inputs" % (manifest_path, line_no))
    elif not path.isfile(entry.landmarks_path):
        raise ManifestError("%s:%d: landmarks file not found: %s" % (manifest_path, line_no, entry.landmarks_path))


def dump_manifest(manifest, manifest_path, relative=True, header_items=()):
    base_dir = path.dirname(path.abspath(manifest_path))
    lines = ['# %s=%s' % item for item in header_items]
    for entry in manifest:
        lines.append('\t'.join((
            entry.sample_id,
            _relativize(base_dir, entry.frames_path) if relative else entry.frames_path,
            entry.landmarks_path if entry.landmarks_path == NO_LANDMARKS or not relative
            else _relativize(base_dir, entry.landmarks_path),
            repr(float(entry.sbp)),
            repr(float(entry.dbp)),
        )))
    with open(manifest_path, 'wb') as file_out:
        file_out.write(''.join(line + '\n' for line in lines).encode('UTF-8'))


def _relativize(base_dir, file_path):
    if not path.isabs(file_path):
        return file_path
    return path.relpath(file_path, base_dir)

#----------------------------------------------------------------------------------------------------------------------------------
# landmarks

def load_landmarks(landmarks_path, expected_T): # pylint: disable=invalid-name
    n_columns = 2 * N_LANDMARKS
    rows = []
    if not path.isfile(landmarks_path):
        raise LandmarkError("%s: landmarks file not found" % landmarks_path)
    with io.open(landmarks_path, 'r', encoding='UTF-8', newline='') as file_in:
        for row_no, row in enumerate(csv.reader(file_in), 1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != n_columns:
                raise LandmarkError("%s: malformed row %d: expected %d columns, found %d" % (
                    landmarks_path,
                    row_no,
                    n_columns,
                    len(row),
                ))
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as error:
                raise LandmarkError("%s: non-numeric cell in row %d" % (landmarks_path, row_no), reason=error)
    if len(rows) != expected_T:
        raise LandmarkError("%s: length mismatch: %d landmark rows for %d frames" % (landmarks_path, len(rows), expected_T))
    points = np.array(rows, dtype=np.float64).reshape(len(rows), N_LANDMARKS, 2)
    return LandmarkTrack(points)


def dump_landmarks(track, landmarks_path):
    with io.open(landmarks_path, 'w', encoding='UTF-8', newline='') as file_out:
        writer = csv.writer(file_out, lineterminator='\n')
        for frame in track.points:
            writer.writerow([repr(float(v)) for v in frame.reshape(-1)])

#----------------------------------------------------------------------------------------------------------------------------------
# frames

def load_frames(frames_path, fps=DEFAULT_FPS):
    if path.isdir(frames_path):
        frames = _load_frame_directory(frames_path)
    elif path.isfile(frames_path):
        frames = _load_frame_blob(frames_path)
    else:
        raise FrameError("No such frames directory or blob: %s" % frames_path)
    return FrameSequence(frames, fps)


def _load_frame_directory(dir_path):
    file_names = sorted(
        name
        for name in listdir(dir_path)
        if path.splitext(name)[1].lower() in IMAGE_EXTENSIONS
    )
    if not file_names:
        raise FrameError("%s: no image files found" % dir_path)
    frames = None
    for t, name in enumerate(file_names):
        file_path = path.join(dir_path, name)
        image = cv2.imread(file_path, cv2.IMREAD_COLOR)
        if image is None:
            raise FrameError("%s: unreadable image file" % file_path)
        if frames is None:
            frames = np.empty((len(file_names),) + image.shape, dtype=np.uint8)
        elif image.shape != frames.shape[1:]:
            raise FrameError("%s: dimension mismatch, %dx%d where previous frames are %dx%d" % (
                file_path,
                image.shape[1],
                image.shape[0],
                frames.shape[2],
                frames.shape[1],
            ))
        # OpenCV decodes to BGR
        frames[t] = cv2.cvtColor(image, cv2.COLOR_BGR2RGB)
    return frames


def _load_frame_blob(blob_path):
    with open(blob_path, 'rb') as file_in:
        header = file_in.read(FRAME_BLOB_HEADER.size)
    if len(header) != FRAME_BLOB_HEADER.size:
        raise FrameError("%s: truncated frame blob header" % blob_path)
    T, H, W = FRAME_BLOB_HEADER.unpack(header) # pylint: disable=invalid-name
    expected_size = FRAME_BLOB_HEADER.size + T * H * W * 3
    actual_size = path.getsize(blob_path)
    if actual_size != expected_size:
        raise FrameError("%s: expected %d bytes for %d frames of %dx%d, found %d" % (
            blob_path,
            expected_size,
            T,
            W,
            H,
            actual_size,
        ))
    if T == 0:
        raise FrameError("%s: frame blob holds no frames" % blob_path)
    # memory-mapped, so that long HD sequences don't have to fit in RAM
    return np.memmap(blob_path, dtype=np.uint8, mode='r', offset=FRAME_BLOB_HEADER.size, shape=(T, H, W, 3))


def dump_frames_blob(frames, blob_path):
    frames = np.ascontiguousarray(frames, dtype=np.uint8)
    T, H, W, _ = frames.shape # pylint: disable=invalid-name
    with open(blob_path, 'wb') as file_out:
        file_out.write(FRAME_BLOB_HEADER.pack(T, H, W))
        file_out.write(frames.tobytes())


def dump_frames_directory(frames, dir_path):
    ensure_dir(dir_path)
    for t, frame in enumerate(frames):
        cv2.imwrite(path.join(dir_path, '%06d.png' % t), cv2.cvtColor(np.asarray(frame, dtype=np.uint8), cv2.COLOR_RGB2BGR))

#----------------------------------------------------------------------------------------------------------------------------------
