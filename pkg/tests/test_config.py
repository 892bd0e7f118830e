import pytest

from fizz.config import PipelineConfig, expand_fixtures_dir, load_config
from fizz.errors import ConfigError


def write_config(tmp_path, body):
    path = tmp_path / "fizz.ini"
    path.write_text(body, encoding="utf-8")
    return str(path)


class TestLoadConfig:
    def test_defaults(self):
        config = load_config(env={})
        assert config.gran == 3
        assert config.seed == 0
        assert config.coref_document and config.coref_summary

    def test_file_values(self, tmp_path):
        path = write_config(
            tmp_path,
            "[backends]\nnli_url = http://nli.local/nli\n"
            "[pipeline]\ngran = 2\ncoref_document = false\n",
        )
        config = load_config(config_file=path, env={})
        assert config.nli_url == "http://nli.local/nli"
        assert config.gran == 2
        assert config.coref_document is False

    def test_env_overrides_file(self, tmp_path):
        path = write_config(tmp_path, "[pipeline]\ngran = 2\n")
        config = load_config(config_file=path, env={"FIZZ_GRAN": "4"})
        assert config.gran == 4

    def test_flag_overrides_env(self, tmp_path):
        config = load_config(env={"FIZZ_GRAN": "4"}, overrides={"gran": 5})
        assert config.gran == 5

    def test_unknown_key_rejected(self, tmp_path):
        path = write_config(tmp_path, "[pipeline]\nbogus = 1\n")
        with pytest.raises(ConfigError):
            load_config(config_file=path, env={})

    def test_bad_int_rejected(self):
        with pytest.raises(ConfigError):
            load_config(env={"FIZZ_GRAN": "three"})

    def test_bad_bool_rejected(self):
        with pytest.raises(ConfigError):
            load_config(env={"FIZZ_COREF_DOCUMENT": "maybe"})


class TestValidation:
    def base_overrides(self):
        return {
            "nli_fixture": "nli.json",
            "llm_fixture": "llm.json",
            "coref_fixture": "coref.json",
        }

    def test_valid_configuration(self):
        config = load_config(env={}, overrides=self.base_overrides())
        assert config.validate() is config

    def test_gran_must_be_positive(self):
        overrides = self.base_overrides() | {"gran": 0}
        with pytest.raises(ConfigError):
            load_config(env={}, overrides=overrides).validate()

    def test_endpoint_and_fixture_mutually_exclusive(self):
        overrides = self.base_overrides() | {"nli_url": "http://x/nli"}
        with pytest.raises(ConfigError):
            load_config(env={}, overrides=overrides).validate()

    def test_missing_nli_source_rejected(self):
        overrides = {"llm_fixture": "llm.json", "coref_fixture": "coref.json"}
        with pytest.raises(ConfigError):
            load_config(env={}, overrides=overrides).validate()

    def test_coref_source_optional_when_disabled(self):
        overrides = {
            "nli_fixture": "nli.json",
            "llm_fixture": "llm.json",
            "coref_document": False,
            "coref_summary": False,
        }
        config = load_config(env={}, overrides=overrides)
        config.validate()

    def test_coref_source_required_when_enabled(self):
        overrides = {"nli_fixture": "nli.json", "llm_fixture": "llm.json"}
        with pytest.raises(ConfigError):
            load_config(env={}, overrides=overrides).validate()


class TestFixturesDir:
    def test_expansion_finds_files(self, corpus_dir):
        values = expand_fixtures_dir(str(corpus_dir))
        assert set(values) == {"nli_fixture", "llm_fixture", "coref_fixture"}

    def test_missing_directory_rejected(self):
        with pytest.raises(ConfigError):
            expand_fixtures_dir("/does/not/exist")

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            expand_fixtures_dir(str(tmp_path))


class TestSnapshot:
    def test_snapshot_is_path_free(self):
        config = PipelineConfig(
            nli_fixture="/tmp/somewhere/nli.json",
            llm_url="http://llm.local/v1",
            coref_fixture="/var/coref.json",
        )
        snap = config.snapshot()
        assert snap["nli_backend"] == "scripted:nli.json"
        assert snap["llm_backend"] == "http:http://llm.local/v1"
        assert snap["coref_backend"] == "scripted:coref.json"
        assert "/tmp" not in str(snap)
