// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace altchain {

/// Worker count from ALTCHAIN_WORKERS, else the hardware concurrency (>= 1).
int worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. Tasks must write
/// only to their own slots; the first exception thrown is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace altchain
