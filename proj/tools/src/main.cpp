#include <cstdio>

int main() {
  std::puts("scl: no subcommand given");
  return 1;
}
