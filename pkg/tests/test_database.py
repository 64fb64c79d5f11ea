import pytest

from twisted_link import INFINITE, DatabaseError, ReportDb, VerificationReport


def reports():
    first = VerificationReport("S3/0", "perm", {'order': 6, 'classes': 3}, {'order': 1, 'fixed': 6},
                               checks={'shift': True, 'oracle': True}, values={'R': 3, 'class_sizes': [1, 2, 3]})
    first.timings['shift'] = 0.25
    second = VerificationReport("abelian/Z-identity", "abelian", values={'R': INFINITE},
                                error="InfiniteReidemeister: no witness")
    return [first, second]


def test_store_and_load(tmp_path):
    db_file = tmp_path / "runs.db"
    with ReportDb(str(db_file)) as db:
        db.store_reports("nightly", reports())
    with ReportDb(str(db_file)) as db:
        assert db.run_names() == ["nightly"]
        loaded = db.load_reports("nightly")
    assert [r.case_id for r in loaded] == ["S3/0", "abelian/Z-identity"]
    assert loaded[0].checks == {'oracle': True, 'shift': True}
    assert loaded[0].values == {'R': 3, 'class_sizes': [1, 2, 3]}
    assert loaded[0].automorphism == {'order': 1, 'fixed': 6}
    assert loaded[0].timings == {'shift': 0.25}
    assert loaded[0].passed
    assert loaded[1].values == {'R': 'infinite'}
    assert not loaded[1].passed


def test_same_name_replaces():
    with ReportDb() as db:
        db.store_reports("run", reports())
        db.store_reports("run", reports()[:1])
        db.store_reports("other", [])
        assert db.run_names() == ["run", "other"]
        assert len(db.load_reports("run")) == 1
        assert db.load_reports("other") == []


def test_errors():
    db = ReportDb()
    with pytest.raises(DatabaseError):
        db.run_names()
    with db:
        with pytest.raises(DatabaseError):
            db.load_reports("missing")
