"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Phase map images: binary PPM (P6) rasters and SVG drawings. The ratio axis runs upwards, lambda_max to the
right, one block of pixels per cell.
"""

import os

import numpy as np
from lxml import etree
from lxml.builder import ElementMaker

from . import errors
from . import logger
from .classifier import PhaseLabel
from .model import to_linear_khz
from .phasemap import PhaseMap

SVG_NAMESPACE = "http://www.w3.org/2000/svg"

DEFAULT_PALETTE = {
    PhaseLabel.NORMAL: (255, 255, 255),
    PhaseLabel.SUPERRADIANT: (220, 30, 30),
    PhaseLabel.OSCILLATORY: (250, 215, 40),
    PhaseLabel.INVERTED: (160, 160, 160),
    PhaseLabel.UNRESOLVED: (0, 0, 0),
}
# cells that have not been computed yet
MISSING_COLOR = (0, 0, 255)


def label_image(phase_map: PhaseMap, palette=None, scale=1) -> np.ndarray:
    """RGB array of shape (rows, columns, 3), top row = largest ratio"""
    palette = palette or DEFAULT_PALETTE
    labels = phase_map.labels()
    n_ratio, n_lambda = labels.shape
    image = np.empty((n_ratio, n_lambda, 3), dtype=np.uint8)
    for i in range(n_ratio):
        for j in range(n_lambda):
            label = labels[i, j]
            image[n_ratio - 1 - i, j] = MISSING_COLOR if label is None else palette[label]
    if scale > 1:
        image = np.repeat(np.repeat(image, scale, axis=0), scale, axis=1)
    return image


def write_ppm(phase_map: PhaseMap, file_path, palette=None, scale=1):
    image = label_image(phase_map, palette, scale)
    height, width, _ = image.shape
    with open(file_path, "wb") as file:
        file.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        file.write(image.tobytes())


def read_ppm(file_path) -> np.ndarray:
    """decodes a binary PPM written by write_ppm"""
    with open(file_path, "rb") as file:
        data = file.read()
    parts = data.split(maxsplit=4)
    if len(parts) < 4 or parts[0] != b"P6" or int(parts[3]) != 255:
        raise ValueError(f"{file_path} is not an 8 bit binary PPM")
    width, height = int(parts[1]), int(parts[2])
    pixels = data[len(data) - width * height * 3 :]
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width, 3)


def _hex(color):
    return "#%02x%02x%02x" % color


def svg_element(phase_map: PhaseMap, palette=None, cell_size=8, margin=60):
    """<svg> element with one <rect> per cell and annotated axes"""
    palette = palette or DEFAULT_PALETTE
    grid = phase_map.grid
    n_ratio, n_lambda = grid.shape
    plot_width, plot_height = n_lambda * cell_size, n_ratio * cell_size
    E = ElementMaker(namespace=SVG_NAMESPACE, nsmap={None: SVG_NAMESPACE})

    cells = E.g(id="cells")
    labels = phase_map.labels()
    for i in range(n_ratio):
        for j in range(n_lambda):
            label = labels[i, j]
            color = MISSING_COLOR if label is None else palette[label]
            cells.append(
                E.rect(
                    x=str(margin + j * cell_size),
                    y=str(margin + (n_ratio - 1 - i) * cell_size),
                    width=str(cell_size),
                    height=str(cell_size),
                    fill=_hex(color),
                    **{"data-label": "missing" if label is None else label.value},
                )
            )

    x_axis_y = margin + plot_height
    axes = E.g(
        E.line(x1=str(margin), y1=str(x_axis_y), x2=str(margin + plot_width), y2=str(x_axis_y), stroke="black"),
        E.line(x1=str(margin), y1=str(margin), x2=str(margin), y2=str(x_axis_y), stroke="black"),
        E.text(
            "max(lambda+, lambda-) / 2pi (kHz)",
            x=str(margin + plot_width / 2),
            y=str(x_axis_y + 40),
            **{"text-anchor": "middle"},
        ),
        E.text(
            "lambda+ / lambda-",
            x=str(margin / 4),
            y=str(margin + plot_height / 2),
            transform=f"rotate(-90 {margin / 4} {margin + plot_height / 2})",
            **{"text-anchor": "middle"},
        ),
        id="axes",
    )
    for j in _tick_indices(n_lambda):
        x = margin + (j + 0.5) * cell_size
        tick = f"{to_linear_khz(grid.lambda_axis[j]):g}"
        axes.append(E.text(tick, x=str(x), y=str(x_axis_y + 16), **{"text-anchor": "middle"}))
    for i in _tick_indices(n_ratio):
        y = margin + (n_ratio - 1 - i + 0.5) * cell_size
        axes.append(E.text(f"{grid.ratio_axis[i]:g}", x=str(margin - 6), y=str(y), **{"text-anchor": "end"}))

    return E.svg(
        cells,
        axes,
        width=str(plot_width + 2 * margin),
        height=str(plot_height + 2 * margin),
        version="1.1",
    )


def _tick_indices(count, ticks=5):
    if count <= ticks:
        return list(range(count))
    return sorted(set(int(round(k * (count - 1) / (ticks - 1))) for k in range(ticks)))


def write_svg(phase_map: PhaseMap, file_path, palette=None, cell_size=8):
    element = svg_element(phase_map, palette, cell_size)
    with open(file_path, "wb") as file:
        file.write(etree.tostring(element, pretty_print=True, xml_declaration=True, encoding="UTF-8"))


def render_phase_map(phase_map: PhaseMap, file_path, palette=None, scale=1, allow_incomplete=False):
    """
    writes an SVG for .svg paths and a PPM for anything else

    a map with missing cells raises IncompletePhaseMapError unless allow_incomplete is set, the missing cells are
    then drawn in MISSING_COLOR
    """
    if not phase_map.is_complete:
        missing = len(phase_map.missing())
        if not allow_incomplete:
            raise errors.IncompletePhaseMapError(missing)
        logger.warning(f"map is incomplete, {missing} cells are drawn blue")
    if os.path.splitext(file_path)[1].lower() == ".svg":
        write_svg(phase_map, file_path, palette, cell_size=max(1, scale) * 8)
    else:
        write_ppm(phase_map, file_path, palette, scale)
    logger.verbose(f"rendered {phase_map.shape[0]} x {phase_map.shape[1]} cells to {file_path}")
