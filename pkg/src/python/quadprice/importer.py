###############################################################
# Copyright 2026 The quadprice developers
#
# This file is part of quadprice.
#
# SPDX-License-Identifier: LGPL-3.0
###############################################################

import importlib
import pkgutil
import sys


def import_plugins_pkg(ns_pkg):
    """Import all modules found in the namespace package ``ns_pkg``"""
    result = {}
    for _, name, _ in sorted(pkgutil.iter_modules(ns_pkg.__path__), key=lambda m: m.name):
        try:
            result[name] = importlib.import_module(f"{ns_pkg.__name__}.{name}")
        except ImportError as exc:
            raise ImportError(f"failed to import {name} plugin: {exc}") from exc
    return result


def import_plugins(pkg_name, pluginpath=None):
    """Load plugins from a namespace package and optional extra paths

    Directories in ``pluginpath`` are searched first, so a plugin there
    replaces a built-in plugin of the same name.
    """
    if pluginpath:
        sys.path[1:1] = pluginpath
    try:
        try:
            pkg = importlib.import_module(pkg_name)
        except ModuleNotFoundError:
            return {}
        return import_plugins_pkg(pkg)
    finally:
        for path in pluginpath or []:
            sys.path.remove(path)
