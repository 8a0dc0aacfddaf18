using System;
using System.Collections.Generic;

public class SliceDemo {
    static void Main(string[] args) {
        List<double> ages = new List<double> {10.0, 20.5, 30.0, 40.25};
        List<double> someAges = new List<double>();
        List<double> temp = new List<double>(0);
        for (int i_temp = 1; i_temp < 3; i_temp++) {
            temp.Add(ages[i_temp]);
        }
        someAges = temp;
        Console.Write("[");
        for (int list_i1 = 0; list_i1 < someAges.Count - 1; list_i1++) {
            Console.Write(someAges[list_i1]);
            Console.Write(", ");
        }
        if (someAges.Count > 0) {
            Console.Write(someAges[someAges.Count - 1]);
        }
        Console.WriteLine("]");
        Console.WriteLine(someAges.Count);
        Console.WriteLine(someAges[0]);
    }
}
