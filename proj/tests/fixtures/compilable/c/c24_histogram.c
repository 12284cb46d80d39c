#include <stdio.h>

int main(void) {
  const char *text = "hello world";
  int counts[26] = {0};
  for (const char *p = text; *p != '\0'; p++) {
    if (*p >= 'a' && *p <= 'z') counts[*p - 'a']++;
  }
  int max = 0;
  for (int i = 0; i < 26; i++)
    if (counts[i] > counts[max]) max = i;
  printf("%c %d\n", 'a' + max, counts[max]);
  return 0;
}
