import os

import hypothesis
import numpy as np
import pytest

np.seterr(all='warn')

hypothesis.settings.register_profile('fast', max_examples=5)
hypothesis.settings.register_profile('debugger', report_multiple_bugs=False)
hypothesis.settings.register_profile('ci', max_examples=25, deadline=None)
hypothesis.settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'ci'))


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full scale experiment runs')


def pytest_collection_modifyitems(config, items):
    if os.environ.get('LIEGROWTH_SLOW', '0') != '0':
        return
    skip = pytest.mark.skip(reason='set LIEGROWTH_SLOW=1 to run')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)
