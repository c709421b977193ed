"""라이브러리 공통 예외"""

from typing import Optional


class S2SError(ValueError):
    """s2s 라이브러리의 모든 예외의 기본 클래스"""


class InvalidArgumentError(S2SError):
    """사전 조건 위반 (빈 패턴, 차원 불일치 등)"""


class ParseError(S2SError):
    """파일 파싱 실패 (행 번호 포함)"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class IndexFormatError(ParseError):
    """인덱스 파일 헤더/버전 오류"""
