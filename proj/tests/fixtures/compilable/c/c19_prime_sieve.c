#include <stdio.h>
#include <string.h>

#define LIMIT 100

int main(void) {
  char composite[LIMIT + 1];
  memset(composite, 0, sizeof composite);
  int count = 0;
  for (int i = 2; i <= LIMIT; i++) {
    if (composite[i]) continue;
    count++;
    for (int j = i * i; j <= LIMIT; j += i) composite[j] = 1;
  }
  printf("%d primes\n", count);
  return 0;
}
