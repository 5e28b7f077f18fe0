import hypothesis

hypothesis.settings.register_profile(
    "eisenlab",
    max_examples=25,
    deadline=None,
)
hypothesis.settings.load_profile("eisenlab")
