#include <stdio.h>

static unsigned gcd(unsigned a, unsigned b) {
  while (b != 0) {
    unsigned t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int main(void) {
  unsigned x = 84, y = 36;
  unsigned g = gcd(x, y);
  unsigned lcm = (x / g) * y;
  printf("gcd=%u lcm=%u\n", g, lcm);
  return 0;
}
