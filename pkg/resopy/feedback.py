#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Feedback utilities shared by the library and the command line front door:
logger configuration, progress bars for long loops (normal-form degrees,
probe assembly, random sweeps) and optional printing.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from tqdm import tqdm_notebook, tqdm
from IPython import get_ipython
import logging
import sys

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
SHELLS = {"ZMQInteractiveShell": "jupyter",
          "TerminalInteractiveShell": "ipython"}


def setup_standard_logger(name: str,
                          default_level: int or None = None,
                          log: str or None = None) -> logging.Logger:
    """
    Configure a logger writing to stderr or to a file. Handlers installed by
    an earlier call are replaced, never stacked.

    Parameters
    ----------
    name: str
        Name of the logger (library modules log to children of "resopy")
    default_level: int
        Default level at which data is logged (defaults to INFO)
    log: str, optional
        Optional filepath to print logs too, if not provided, logging is printed to stderr

    Returns
    -------
    logging.Logger
    """
    default_level = default_level or logging.INFO
    logger = logging.getLogger(name)
    logger.setLevel(default_level)
    for handler in [h for h in logger.handlers if getattr(h, "_resopy_handler", False)]:
        logger.removeHandler(handler)
        handler.close()
    if log is not None:
        handler = logging.FileHandler(filename=log)
    else:
        handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._resopy_handler = True
    logger.addHandler(handler)
    return logger


def progress_bar(x: iter,
                 verbose: bool = True,
                 **kwargs):
    """
    Wrap an iterable in a tqdm bar (the notebook widget under Jupyter). Bars
    are written to stderr and cleared when done, keeping stdout free for
    reports.

    Parameters
    -----------
    x: iterable
    verbose: bool, (default=True)
        If False, x is returned untouched
    kwargs:
        additional keyword arguments for tqdm (desc, total, disable...)

    Returns
    -------
    tqdm or tqdm_notebook or iterable
    """
    if not verbose:
        return x
    kwargs.setdefault("leave", False)
    if which_environment() == 'jupyter':
        return tqdm_notebook(x, **kwargs)
    kwargs.setdefault("file", sys.stderr)
    return tqdm(x, **kwargs)


def which_environment() -> str:
    """
    Name of the interactive shell we run under.

    Returns
    -------
    str
        'jupyter', 'ipython' or 'terminal'
    """
    shell = get_ipython()
    return SHELLS.get(type(shell).__name__, 'terminal')


def vprint(verbose: bool, file=None):
    """
    Printer for optional output.

    Parameters
    ----------
    verbose: bool
        If False the returned callable does nothing
    file: optional
        Stream to print to (defaults to sys.stdout at call time)

    Returns
    -------
    callable
    """
    if not verbose:
        return lambda *a, **k: None

    def _print(*args, **kwargs):
        kwargs.setdefault("file", file or sys.stdout)
        print(*args, **kwargs)
    return _print
