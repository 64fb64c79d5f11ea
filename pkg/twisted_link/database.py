# -*- coding: utf-8 -*-
#
# Copyright (c) 2022 Adam Solchenberger <asolchenberger@gmail.com>
# Copyright (c) 2022 Jason Engman <jengman@testtech-solutions.com>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
import json
import logging
from datetime import datetime
from typing import Any, Optional

from sqlalchemy import Boolean, Column, DateTime, ForeignKey, Integer, String, Text, create_engine
from sqlalchemy.orm import declarative_base, relationship, sessionmaker

from .api import TwistedLinkError
from .corpus import VerificationReport

__all__ = ["DatabaseError", "ReportDb"]

logger = logging.getLogger(__name__)


class DatabaseError(TwistedLinkError):
    """
    raised on database errors
    """


ReportsBase = declarative_base()


class CorpusRunTable(ReportsBase):
    __tablename__ = 'corpus-run'
    id = Column(Integer, primary_key=True, autoincrement=True)
    name = Column(String, nullable=False, unique=True)
    created = Column(DateTime, default=datetime.utcnow)
    passed = Column(Boolean, default=False)
    cases = relationship('CaseReportTable', back_populates='run', cascade='all, delete-orphan',
                         order_by='CaseReportTable.position')


class CaseReportTable(ReportsBase):
    __tablename__ = 'case-report'
    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey(CorpusRunTable.id, ondelete='CASCADE'), nullable=False)
    position = Column(Integer, nullable=False)
    case_id = Column(String, nullable=False)
    kind = Column(String, nullable=False)
    group = Column(Text)  # json
    automorphism = Column(Text)  # json
    values = Column(Text)  # json
    error = Column(String)
    run = relationship('CorpusRunTable', back_populates='cases')
    checks = relationship('CheckResultTable', back_populates='case', cascade='all, delete-orphan',
                          order_by='CheckResultTable.name')


class CheckResultTable(ReportsBase):
    __tablename__ = 'check-result'
    case_pk = Column(Integer, ForeignKey(CaseReportTable.id, ondelete='CASCADE'), primary_key=True)
    name = Column(String, primary_key=True)
    passed = Column(Boolean, nullable=False)
    seconds = Column(String)
    case = relationship('CaseReportTable', back_populates='checks')


class ReportDb():
    """
    Stores corpus runs. With no db_file the database lives in memory and is
    gone after close().
    """
    models = {
        "corpus-run": CorpusRunTable,
        "case-report": CaseReportTable,
        "check-result": CheckResultTable,
    }

    def __init__(self, db_file: Optional[str] = None) -> None:
        self.db_file = db_file
        self.session = None
        self.engine = None

    def open(self) -> None:
        if self.session:
            self.close()
        url = f"sqlite:///{self.db_file}" if self.db_file else "sqlite://"
        self.engine = create_engine(url)
        ReportsBase.metadata.create_all(self.engine)
        Session = sessionmaker(bind=self.engine)
        self.session = Session()
        logger.debug("report database open at %s", url)

    def close(self, *args: Any) -> None:
        if self.session:
            self.session.close()
        if self.engine:
            self.engine.dispose()
        self.session = None
        self.engine = None

    def __enter__(self) -> "ReportDb":
        self.open()
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()

    def _require_session(self):
        if not self.session:
            raise DatabaseError("report database used before open()")
        return self.session

    def run_names(self) -> list:
        session = self._require_session()
        return [row.name for row in session.query(CorpusRunTable).order_by(CorpusRunTable.id)]

    def store_reports(self, run_name: str, reports: list) -> None:
        """
        save a run under run_name, replacing a run stored under the same name
        """
        session = self._require_session()
        existing = session.query(CorpusRunTable).filter(CorpusRunTable.name == run_name).first()
        if existing is not None:
            session.delete(existing)
            session.flush()
        run = CorpusRunTable(name=run_name, passed=all(r.passed for r in reports))
        for position, report in enumerate(reports):
            data = report.to_dict()
            case = CaseReportTable(
                position=position,
                case_id=report.case_id,
                kind=report.kind,
                group=json.dumps(data['group'], sort_keys=True),
                automorphism=json.dumps(data['automorphism'], sort_keys=True),
                values=json.dumps(data['values'], sort_keys=True),
                error=report.error,
            )
            for name, passed in report.checks.items():
                seconds = report.timings.get(name)
                case.checks.append(CheckResultTable(name=name, passed=passed,
                                                    seconds=None if seconds is None else str(seconds)))
            run.cases.append(case)
        session.add(run)
        try:
            session.commit()
        except Exception as e:
            session.rollback()
            raise DatabaseError(f"could not store run {run_name}: {e}")
        logger.info("stored %d reports as run %s", len(reports), run_name)

    def load_reports(self, run_name: str) -> list:
        session = self._require_session()
        run = session.query(CorpusRunTable).filter(CorpusRunTable.name == run_name).first()
        if run is None:
            raise DatabaseError(f"no run named {run_name}")
        reports = []
        for case in run.cases:
            reports.append(VerificationReport(
                case_id=case.case_id,
                kind=case.kind,
                group=json.loads(case.group),
                automorphism=json.loads(case.automorphism),
                checks={c.name: c.passed for c in case.checks},
                values=json.loads(case.values),
                error=case.error,
                timings={c.name: float(c.seconds) for c in case.checks if c.seconds is not None},
            ))
        return reports
