"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import datetime
import os
import time

import numpy as np
from dateutil import parser as date_parser

from . import errors


def datetime_isostring(date, keep_microseconds=False):
    """create an iso string representation for a date object
    e.g. for the provenance header of a phase map

    arguments:
    date -- date object
    keep_microseconds -- include microseconds in iso
    """
    utc_offset_sec = time.altzone if time.localtime().tm_isdst else time.timezone
    utc_offset = datetime.timedelta(seconds=-utc_offset_sec)

    if keep_microseconds:
        date_to_format = date
    else:
        date_to_format = date.replace(microsecond=0)

    return date_to_format.replace(tzinfo=datetime.timezone(offset=utc_offset)).isoformat()


def datetime_now():
    """now(), or the instant given by SOURCE_DATE_EPOCH for reproducible outputs"""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        return datetime.datetime.fromtimestamp(int(epoch))
    return datetime.datetime.now()


def datetime_now_isostring():
    return datetime_isostring(datetime_now())


def datetime_from_isostring(text):
    return date_parser.isoparse(text)


def parse_axis(text):
    """parse an axis given as 'start:stop:count' (inclusive) or as a comma separated list

    e.g. '0:2:81' or '0.25,0.5,1'
    """
    text = text.strip()
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            return tuple(float(x) for x in np.linspace(float(start), float(stop), count))
        return tuple(float(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise errors.ParameterError(f"Cannot read axis '{text}', expected start:stop:count or a list")


def parse_int_range(text):
    """parse '1..6' into [1, 2, 3, 4, 5, 6], or '1,3,6' into [1, 3, 6]"""
    text = text.strip()
    try:
        if ".." in text:
            first, last = text.split("..")
            values = list(range(int(first), int(last) + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise errors.ParameterError(f"Cannot read range '{text}', expected first..last or a list")
    if len(values) == 0:
        raise errors.ParameterError(f"Empty range '{text}'")
    return values


def is_strictly_increasing(values):
    return all(b > a for a, b in zip(values, values[1:]))
