"""JSON file formats for dense tensors and matrix product states.

Two document kinds, both version 1:

* tensor files: {"version": 1, "shape": [...], "data": [[re, im], ...]}
  with row-major data;
* MPS files: {"version": 1, "form": "...", "sites": [...], "bonds": ...}
  where each site is {"phys_dim", "left_dim", "right_dim", "data"} with
  the same [re, im] encoding in the site's flat order, and "bonds" is
  null or a list (one entry per bond) of weight lists / nulls.

The mixed form serializes its center into the tag ("mixed:<n>"). All
floats go through Python's shortest round-trip repr via the json module,
so write->read is bit-stable.
"""

import json

import numpy as np

from .errors import FileFormatError
from .mps import BondSpectrum, MatrixProductState, SiteTensor
from .tensor import DenseTensor, tensor_new

FILE_VERSION = 1


def _encode_complex(data: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in data]


def _decode_complex(pairs, what: str) -> np.ndarray:
    if not isinstance(pairs, list):
        raise FileFormatError(f"{what}: data must be a list of [re, im] pairs")
    out = np.empty(len(pairs), dtype=complex)
    for i, pair in enumerate(pairs):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise FileFormatError(f"{what}: entry {i} is not a [re, im] pair")
        out[i] = complex(pair[0], pair[1])
    return out


def _load_document(path: str, what: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{what} {path!r}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{what} {path!r}: top level must be an object")
    if doc.get("version") != FILE_VERSION:
        raise FileFormatError(f"{what} {path!r}: unsupported version {doc.get('version')!r}")
    return doc


def save_tensor(path: str, t: DenseTensor) -> None:
    doc = {
        "version": FILE_VERSION,
        "shape": list(t.shape),
        "data": _encode_complex(t.data),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_tensor(path: str) -> DenseTensor:
    doc = _load_document(path, "tensor file")
    shape = doc.get("shape")
    if (
        not isinstance(shape, list)
        or not shape
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in shape)
    ):
        raise FileFormatError(f"tensor file {path!r}: shape must be a list of positive integers")
    data = _decode_complex(doc.get("data"), f"tensor file {path!r}")
    if data.size != int(np.prod(shape)):
        raise FileFormatError(
            f"tensor file {path!r}: {data.size} entries for shape {tuple(shape)}"
        )
    return tensor_new(tuple(shape), data)


def _form_to_tag(m: MatrixProductState) -> str:
    if m.form == "mixed":
        return f"mixed:{m.center}"
    return m.form


def _tag_to_form(tag, path: str) -> tuple[str, int | None]:
    if not isinstance(tag, str):
        raise FileFormatError(f"mps file {path!r}: form must be a string")
    if tag in ("left", "right", "vidal", "unknown"):
        return tag, None
    if tag.startswith("mixed:"):
        try:
            center = int(tag.split(":", 1)[1])
        except ValueError:
            raise FileFormatError(f"mps file {path!r}: bad mixed tag {tag!r}") from None
        return "mixed", center
    raise FileFormatError(f"mps file {path!r}: unknown form tag {tag!r}")


def save_mps(path: str, m: MatrixProductState) -> None:
    sites = [
        {
            "phys_dim": s.phys_dim,
            "left_dim": s.left_dim,
            "right_dim": s.right_dim,
            "data": _encode_complex(s.data),
        }
        for s in m.sites
    ]
    bonds = None
    if m.bonds is not None:
        bonds = [
            None if b is None else [float(v) for v in b.values] for b in m.bonds
        ]
    doc = {
        "version": FILE_VERSION,
        "form": _form_to_tag(m),
        "sites": sites,
        "bonds": bonds,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_mps(path: str) -> MatrixProductState:
    doc = _load_document(path, "mps file")
    form, center = _tag_to_form(doc.get("form"), path)
    raw_sites = doc.get("sites")
    if not isinstance(raw_sites, list) or not raw_sites:
        raise FileFormatError(f"mps file {path!r}: sites must be a nonempty list")
    sites = []
    for n, raw in enumerate(raw_sites, start=1):
        if not isinstance(raw, dict):
            raise FileFormatError(f"mps file {path!r}: site {n} must be an object")
        dims = []
        for key in ("phys_dim", "left_dim", "right_dim"):
            v = raw.get(key)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise FileFormatError(
                    f"mps file {path!r}: site {n} field {key} must be a positive integer"
                )
            dims.append(v)
        data = _decode_complex(raw.get("data"), f"mps file {path!r} site {n}")
        try:
            sites.append(SiteTensor(dims[0], dims[1], dims[2], data))
        except Exception as exc:
            raise FileFormatError(f"mps file {path!r}: site {n}: {exc}") from exc
    raw_bonds = doc.get("bonds")
    bonds = None
    if raw_bonds is not None:
        if not isinstance(raw_bonds, list):
            raise FileFormatError(f"mps file {path!r}: bonds must be null or a list")
        bonds = []
        for n, raw in enumerate(raw_bonds, start=1):
            if raw is None:
                bonds.append(None)
                continue
            if not isinstance(raw, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
            ):
                raise FileFormatError(
                    f"mps file {path!r}: bond {n} must be null or a list of reals"
                )
            try:
                bonds.append(BondSpectrum(np.asarray(raw, dtype=float)))
            except ValueError as exc:
                raise FileFormatError(f"mps file {path!r}: bond {n}: {exc}") from exc
    try:
        return MatrixProductState(
            sites=tuple(sites),
            bonds=None if bonds is None else tuple(bonds),
            form=form,
            center=center,
        )
    except ValueError as exc:
        raise FileFormatError(f"mps file {path!r}: {exc}") from exc
