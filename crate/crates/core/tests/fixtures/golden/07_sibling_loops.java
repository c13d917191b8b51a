public class Main {
    public static void main(String[] args) {
        int[] a = {3, 1, 2};                         // v1 s1
        int s = 0;                                   // v2 s2
        for (int x : a) s += x;                      // loop1 s3 (x is a parameter, not a fragment), s4
        int i = 0;                                   // v3 s5
        while (i < a.length) {                       // loop2 s6
            s -= a[i];                               // s7
            i++;                                     // s8
        }
        do {                                         // loop3 s9
            i--;                                     // s10
        } while (i > 0);
        System.out.println(s);                       // s11
    }
}
