from __future__ import annotations

import re

import numpy as np

from imaging.image_types import RasterImage

# Only 8-bit images are supported.
PPM_MAXVAL = 255

_WHITESPACE = b" \t\n\r\v\f"
_TOKEN = re.compile(rb"\S+")
_COMMENT = re.compile(rb"#[^\n\r]*")


class PpmFormatError(ValueError):
    """
    Raised when PPM bytes cannot be decoded. `offset` is the byte offset of the problem.
    """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def _blank_comments(data: bytes) -> bytes:
    # Same-length replacement keeps token offsets valid for error reporting.
    return _COMMENT.sub(lambda m: b" " * len(m.group(0)), data)


def _read_header(data: bytes) -> tuple[bytes, int, int, int]:
    """
    Parse magic, width, height and maxval.
    Returns (magic, width, height, end offset of the maxval token).
    """
    if len(data) < 2:
        raise PpmFormatError("File too short for a PPM magic number", 0)
    magic = data[:2]
    if magic not in (b"P3", b"P6"):
        raise PpmFormatError(f"Unsupported magic number {magic!r}, expected b'P3' or b'P6'", 0)
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2:3] != b"#":
        raise PpmFormatError("Magic number must be followed by whitespace", 2)

    # The header ends at the maxval token, so only scan a bounded prefix.
    values: list[int] = []
    pos = 2
    while len(values) < 3:
        while pos < len(data) and (data[pos] in _WHITESPACE or data[pos:pos + 1] == b"#"):
            if data[pos:pos + 1] == b"#":
                while pos < len(data) and data[pos] not in b"\n\r":
                    pos += 1
            else:
                pos += 1
        if pos >= len(data):
            raise PpmFormatError("Truncated header", pos)
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise PpmFormatError(f"Malformed header value {token!r}", start)
        values.append(int(token))

    width, height, maxval = values
    if maxval != PPM_MAXVAL:
        raise PpmFormatError(f"Unsupported maxval {maxval}, expected {PPM_MAXVAL}", pos)
    return magic, width, height, pos


def read_ppm(data: bytes) -> RasterImage:
    """
    Decode a P3 (plain) or P6 (binary) PPM with maxval 255.

    Raises PpmFormatError for a malformed header, a maxval other than 255,
    out-of-range plain samples or truncated pixel data.
    """
    data = bytes(data)
    magic, width, height, pos = _read_header(data)
    expected = width * height * 3

    if magic == b"P6":
        if pos >= len(data):
            raise PpmFormatError("Truncated pixel data: missing separator after maxval", pos)
        if data[pos] not in _WHITESPACE:
            raise PpmFormatError("Expected a single whitespace byte after maxval", pos)
        start = pos + 1
        payload = data[start:start + expected]
        if len(payload) < expected:
            raise PpmFormatError(
                f"Truncated pixel data: expected {expected} bytes, found {len(payload)}",
                len(data),
            )
        pixels = np.frombuffer(payload, dtype=np.uint8)
        return RasterImage(width=width, height=height, pixels=pixels)

    body = _blank_comments(data[pos:])
    samples: list[int] = []
    for match in _TOKEN.finditer(body):
        if len(samples) == expected:
            break
        token = match.group(0)
        offset = pos + match.start()
        if not token.isdigit():
            raise PpmFormatError(f"Malformed sample {token!r}", offset)
        value = int(token)
        if value > PPM_MAXVAL:
            raise PpmFormatError(f"Sample {value} exceeds maxval {PPM_MAXVAL}", offset)
        samples.append(value)
    if len(samples) < expected:
        raise PpmFormatError(
            f"Truncated pixel data: expected {expected} samples, found {len(samples)}",
            len(data),
        )
    return RasterImage(width=width, height=height, pixels=np.array(samples, dtype=np.uint8))


def write_ppm(img: RasterImage, binary: bool = True) -> bytes:
    """
    Encode an image as P6 (binary=True) or P3. Output always round-trips through read_ppm.
    """
    if binary:
        header = f"P6\n{img.width} {img.height}\n{PPM_MAXVAL}\n".encode("ascii")
        return header + img.pixels.tobytes()

    lines = [f"P3\n{img.width} {img.height}\n{PPM_MAXVAL}"]
    for row in img.pixels:
        lines.append(" ".join(str(int(v)) for v in row.reshape(-1)))
    return ("\n".join(lines) + "\n").encode("ascii")
