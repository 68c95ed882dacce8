#include <iostream>

int main() {
  std::cout << "globalctl: CLI under construction\n";
  return 0;
}
