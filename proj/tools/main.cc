// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return efp::run_cli(argc, argv, std::cout, std::cerr);
}
