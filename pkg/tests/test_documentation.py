#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import importlib.util
import os
import shutil
import tempfile
import unittest

from diagasym.modules.commands import __all__ as command_names

DOCUMENTATION = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), 'documentation')


def load_generator():
    spec = importlib.util.spec_from_file_location('generate_documentation',
                                                  os.path.join(DOCUMENTATION, 'generate_documentation.py'))
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


class TestGenerator(unittest.TestCase):

    def setUp(self):
        self.dirname = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.dirname)
        shutil.copytree(os.path.join(DOCUMENTATION, 'website'), os.path.join(self.dirname, 'website'))
        load_generator().write_doc(self.dirname)
        with open(os.path.join(self.dirname, 'README.md')) as f:
            self.readme = f.read()

    def test_every_command(self):
        for name in command_names:
            self.assertIn('#### [{0}](../diagasym/modules/commands/{0}.py)'.format(name), self.readme)

    def test_fields(self):
        self.assertIn('~~~~bash\ndiagasym series --d 3 --n-max 100\n~~~~', self.readme)
        self.assertIn('> - psutil: memory budget of the coefficient table', self.readme)
        self.assertIn('whole series is recomputed', self.readme)


if __name__ == '__main__':
    unittest.main()
