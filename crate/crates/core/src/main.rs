// Copyright 2026 The cqed-rabi Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(cqed_rabi::cli::run(std::env::args_os()));
}
