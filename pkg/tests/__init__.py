"""Test suite for Flow CLI.""" 