# src/evaluation/gridfile.py
"""SampledField 격자 파일 입출력

이진 형식 (.cfmg), 64 바이트 헤더:
    magic "CFMG" | version u32 | nx u32 | ny u32 | x 축 태그 u32 | y 축 태그 u32
    | 구적 규칙 u32 | payload offset u32 | x 이름 12s | y 이름 12s | 예약 8 바이트
그 뒤 axis_x (<f8 × nx), axis_y (<f8 × ny), 값 (<c16, row-major).
CSV (x,y,re,im) 는 사람이 읽는 용도.
"""

import struct
from pathlib import Path

import numpy as np
import pandas as pd

from common import AXIS_TAGS, QUAD_RULES, ArgumentError, SampledField

MAGIC = b"CFMG"
VERSION = 1
HEADER = struct.Struct("<4sIIIIIII12s12s8x")
HEADER_SIZE = 64

_TAG_NAMES = {v: k for k, v in AXIS_TAGS.items()}
_QUAD_NAMES = {v: k for k, v in QUAD_RULES.items()}


def write_grid_file(field: SampledField, path) -> Path:
    """이진 격자 파일 저장 (같은 입력 → 같은 바이트)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    nx, ny = field.shape
    names = [n.encode("utf-8")[:12] for n in field.names]
    header = HEADER.pack(
        MAGIC,
        VERSION,
        nx,
        ny,
        AXIS_TAGS[field.axis_tags[0]],
        AXIS_TAGS[field.axis_tags[1]],
        QUAD_RULES[field.quad_weight],
        HEADER_SIZE,
        names[0],
        names[1],
    )
    with open(path, "wb") as f:
        f.write(header)
        f.write(field.axis_x.astype("<f8").tobytes())
        f.write(field.axis_y.astype("<f8").tobytes())
        f.write(np.ascontiguousarray(field.values).astype("<c16").tobytes())
    return path


def read_grid_file(path) -> SampledField:
    """이진 격자 파일 읽기

    Raises:
        ArgumentError: magic/version 불일치 또는 잘린 파일
    """
    data = Path(path).read_bytes()
    if len(data) < HEADER_SIZE:
        raise ArgumentError(f"{path}: too short for a grid file header")
    magic, version, nx, ny, tag_x, tag_y, quad, offset, name_x, name_y = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ArgumentError(f"{path}: not a grid file (magic {magic!r})")
    if version != VERSION:
        raise ArgumentError(f"{path}: unsupported grid file version {version}")
    expected = offset + 8 * (nx + ny) + 16 * nx * ny
    if len(data) != expected:
        raise ArgumentError(f"{path}: expected {expected} bytes, found {len(data)}")

    ax = np.frombuffer(data, dtype="<f8", count=nx, offset=offset)
    ay = np.frombuffer(data, dtype="<f8", count=ny, offset=offset + 8 * nx)
    values = np.frombuffer(data, dtype="<c16", count=nx * ny, offset=offset + 8 * (nx + ny)).reshape(nx, ny)
    return SampledField(
        axis_x=ax.astype(float),
        axis_y=ay.astype(float),
        values=values.astype(complex),
        axis_tags=(_TAG_NAMES.get(tag_x, "other"), _TAG_NAMES.get(tag_y, "other")),
        quad_weight=_QUAD_NAMES.get(quad, "none"),
        names=(name_x.rstrip(b"\0").decode("utf-8"), name_y.rstrip(b"\0").decode("utf-8")),
    )


def write_grid_csv(field: SampledField, path) -> Path:
    """x,y,re,im 열 (x 바깥 루프, row-major)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    X, Y = np.meshgrid(field.axis_x, field.axis_y, indexing="ij")
    df = pd.DataFrame({
        "x": X.ravel(),
        "y": Y.ravel(),
        "re": field.values.real.ravel(),
        "im": field.values.imag.ravel(),
    })
    df.to_csv(path, index=False, float_format="%.17g")
    return path


def read_grid_csv(path) -> SampledField:
    df = pd.read_csv(path)
    missing = {"x", "y", "re", "im"} - set(df.columns)
    if missing:
        raise ArgumentError(f"{path}: missing columns {sorted(missing)}")
    ax = np.unique(df["x"].to_numpy())
    ay = np.unique(df["y"].to_numpy())
    if len(df) != ax.size * ay.size:
        raise ArgumentError(f"{path}: rows do not form a rectangular grid")
    df = df.sort_values(["x", "y"])
    values = (df["re"].to_numpy() + 1j * df["im"].to_numpy()).reshape(ax.size, ay.size)
    return SampledField(axis_x=ax, axis_y=ay, values=values)


def save_field(field: SampledField, path) -> Path:
    """확장자로 형식 선택 (.csv → CSV, 그 외 이진)"""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return write_grid_csv(field, path)
    return write_grid_file(field, path)


def load_field(path) -> SampledField:
    path = Path(path)
    if not path.exists():
        raise ArgumentError(f"grid file not found: {path}")
    if path.suffix.lower() == ".csv":
        return read_grid_csv(path)
    return read_grid_file(path)
