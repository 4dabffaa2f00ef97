// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
