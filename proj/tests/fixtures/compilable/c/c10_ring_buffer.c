#include <stdbool.h>
#include <stdio.h>

#define CAP 8

typedef struct {
  int data[CAP];
  unsigned head;
  unsigned tail;
} Ring;

static bool ring_put(Ring *r, int v) {
  unsigned next = (r->head + 1) % CAP;
  if (next == r->tail) return false;
  r->data[r->head] = v;
  r->head = next;
  return true;
}

static bool ring_get(Ring *r, int *out) {
  if (r->head == r->tail) return false;
  *out = r->data[r->tail];
  r->tail = (r->tail + 1) % CAP;
  return true;
}

int main(void) {
  Ring r = {{0}, 0, 0};
  int v = 0, n = 0;
  while (ring_put(&r, n)) n++;
  while (ring_get(&r, &v)) printf("%d ", v);
  printf("\n");
  return 0;
}
