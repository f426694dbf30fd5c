#include <cstdio>

int main() {
  std::puts("wagoner: CLI under construction");
  return 0;
}
