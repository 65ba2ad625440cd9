from hypothesis import settings

settings.register_profile("suite", derandomize=True, max_examples=100, deadline=None)
settings.load_profile("suite")
