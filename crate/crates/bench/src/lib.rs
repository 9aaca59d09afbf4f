// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for cantorlab; see `benches/`.
