# Tests package for obsaudit
