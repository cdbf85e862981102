// Copyright 2026 The qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <iostream>

#include "qjump/report/report.h"

int main(int argc, char **argv) {
    qjump::RunConfig cfg;
    try {
        cfg = qjump::parse_config(argc, argv);
    } catch (const qjump::ConfigError &e) {
        (e.exit_code() == 0 ? std::cout : std::cerr) << e.what() << (e.exit_code() == 0 ? "" : "\n");
        return e.exit_code();
    }
    try {
        qjump::write_output(qjump::run_command(cfg), cfg.out);
    } catch (const std::exception &e) {
        std::cerr << "qjump: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
