from mutdiff.core.config import PROJECT_ROOT, Settings


def test_env_file_is_read_from_the_repository_root():
    assert (PROJECT_ROOT / "pyproject.toml").is_file()
    assert Settings.model_config["env_file"] == PROJECT_ROOT / ".env"


def test_prefixed_environment_overrides_defaults(monkeypatch):
    monkeypatch.setenv("MUTDIFF_DEFAULT_ND_MAX", "8")
    monkeypatch.setenv("MUTDIFF_LOG_LEVEL", "DEBUG")
    configured = Settings()
    assert configured.DEFAULT_ND_MAX == 8
    assert configured.LOG_LEVEL == "DEBUG"
