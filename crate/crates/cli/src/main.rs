// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(cantorlab_cli::run(std::env::args_os()));
}
